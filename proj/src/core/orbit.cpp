#include "orbit.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "errors.hpp"
#include "stallings.hpp"

namespace vfe {

OrbitReport orbit(const VFGroup& g, const GEndo& phi, const GElement& x, std::size_t cap) {
  if (cap < 1) throw DomainError("orbit cap must be at least 1");
  OrbitReport out;
  out.cap = cap;
  std::unordered_map<GElement, std::size_t> seen;
  GElement cur = x;
  while (true) {
    if (auto it = seen.find(cur); it != seen.end()) {
      out.preperiod = it->second;
      out.period = out.elements.size() - it->second;
      out.status = OrbitReport::Status::Finite;
      return out;
    }
    seen.emplace(cur, out.elements.size());
    out.elements.push_back(cur);
    if (out.elements.size() > cap) {
      out.status = OrbitReport::Status::Exceeded;
      return out;
    }
    cur = endo_apply(g, phi, cur);
  }
}

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("order bound overflows 64 bits");
  return r;
}

}  // namespace

// Knapsack over primes p with p - 1 <= n: each prime contributes one prime
// power p^a of cost (p - 1) p^(a-1).
std::uint64_t aut_order_bound(std::size_t n) {
  if (n < 1) throw DomainError("aut_order_bound needs n >= 1");
  std::vector<std::uint64_t> best(n + 1, 1);
  for (std::uint64_t p = 2; p - 1 <= n; ++p) {
    if (!is_prime(p)) continue;
    std::vector<std::uint64_t> next = best;
    std::uint64_t value = p, cost = p - 1;
    while (cost <= n) {
      for (std::size_t c = cost; c <= n; ++c)
        next[c] = std::max(next[c], checked_mul(best[c - cost], value));
      value = checked_mul(value, p);
      cost = checked_mul(cost, p);
    }
    best = std::move(next);
  }
  return best[n];
}

// A single prime power p^a passes alone whenever it passes inside any m, so
// the lcm is the product of the largest passing power of each prime.
std::uint64_t aut_order_lcm(std::size_t n) {
  if (n < 1) throw DomainError("aut_order_lcm needs n >= 1");
  std::uint64_t out = 1;
  for (std::uint64_t p = 2; p - 1 <= n; ++p) {
    if (!is_prime(p)) continue;
    std::uint64_t value = p, cost = p - 1;
    while (cost <= n) {
      out = checked_mul(out, p);
      value = checked_mul(value, p);
      cost = checked_mul(cost, p);
    }
  }
  return out;
}

PeriodBound period_bound(const VFGroup& g, const GEndo& phi, const FullyInvariantSubgroup& fi) {
  PeriodBound out;
  out.aut_bound = aut_order_bound(fi.rank() + 1);
  const auto theta = quotient_endo(
      g, phi, fi.coset_reps(),
      [&](const GElement& x) { return std::optional<std::uint32_t>(fi.coset_of(x)); });
  for (std::uint32_t i = 0; i < theta.size(); ++i) {
    CosetPeriod c;
    c.coset = i;
    std::vector<std::int64_t> at(theta.size(), -1);
    std::uint32_t cur = i;
    while (at[cur] < 0) {
      at[cur] = static_cast<std::int64_t>(c.theta_orbit.size());
      c.theta_orbit.push_back(cur);
      cur = theta[cur];
    }
    if (cur == i) {
      c.period = c.theta_orbit.size();
      c.bound = checked_mul(out.aut_bound, *c.period);
      out.bound = std::max(out.bound, c.bound);
    }
    out.cosets.push_back(std::move(c));
  }
  return out;
}

namespace {

// Number of distinct cosets of the subgroup `f_image` (words in F) among xs.
std::size_t coset_count(const VFGroup& g, const Automaton& f_image,
                        const std::vector<GElement>& xs) {
  std::vector<GElement> classes;
  for (const GElement& x : xs) {
    const bool known = std::any_of(classes.begin(), classes.end(), [&](const GElement& y) {
      const GElement q = g.mult(x, g.inverse(y));
      return q.coset == 0 && f_image.contains(q.word);
    });
    if (!known) classes.push_back(x);
  }
  return classes.size();
}

}  // namespace

StraightBound straight_bound(const VFGroup& g, const GEndo& phi, const FullyInvariantSubgroup& fi) {
  StraightBound out;
  const Restriction psi = restrict_to_subgroup(g, phi, fi.automaton());
  const std::size_t k = psi.endo.alphabet_size();

  // Im(psi^j) as an automaton over the F'-basis alphabet, advanced by
  // applying psi to a basis (keeps the words short).
  auto advance = [&](const Automaton& a) {
    std::vector<Word> gens;
    for (const Word& w : a.basis()) gens.push_back(psi.endo.apply(w));
    return Automaton::from_generators(gens, k);
  };
  auto in_f = [&](const Automaton& a) {
    std::vector<Word> gens;
    for (const Word& w : a.basis()) gens.push_back(evaluate(w, psi.basis));
    return Automaton::from_generators(gens, g.rank());
  };

  std::vector<GElement> reps = fi.coset_reps();
  for (GElement& r : reps) r = endo_apply(g, phi, r);
  Automaton image = advance(Automaton::whole_group(k));
  if (image.rank() == k && fi.index_in_g() == 1) {
    // Full rank: psi is injective (free groups are Hopfian), and with a
    // single coset there is no index to watch.
    out.steps.push_back({1, k, k, 1, 1});
    out.bound = 1;
    return out;
  }
  Automaton next = advance(image);
  std::size_t j = 1;
  // Rank of Im(psi^j) is non-increasing, so this loop runs at most rank(F') times.
  while (next.rank() != image.rank()) {
    out.steps.push_back({j, image.rank(), next.rank(), 0, 0});
    image = std::move(next);
    next = advance(image);
    for (GElement& r : reps) r = endo_apply(g, phi, r);
    ++j;
  }

  if (image.rank() == 0) {
    // Im(phi^j) is the finite set of images of the coset representatives.
    out.vanishing = true;
    for (const GElement& r : reps) {
      const OrbitReport o = orbit(g, phi, r, reps.size() + 1);
      if (!o.finite()) throw Error("internal: orbit in a finite image is not finite");
      out.largest_orbit = std::max(out.largest_orbit, o.elements.size());
    }
    out.steps.push_back({j, 0, 0, reps.size(), reps.size()});
    out.bound = j + out.largest_orbit;
    return out;
  }

  // Past the first rank stabilisation psi is injective on Im(psi^j); phi is
  // injective on Im(phi^j) iff the index of F' phi^j stops dropping.
  std::vector<GElement> next_reps = reps;
  for (GElement& r : next_reps) r = endo_apply(g, phi, r);
  while (true) {
    StraightStep s{j, image.rank(), next.rank(), coset_count(g, in_f(image), reps),
                   coset_count(g, in_f(next), next_reps)};
    out.steps.push_back(s);
    if (s.index == s.next_index) break;
    if (out.steps.size() > fi.index_in_g() + k + 1)
      throw Error("internal: straight bound did not stabilise");
    image = std::move(next);
    next = advance(image);
    reps = next_reps;
    for (GElement& r : next_reps) r = endo_apply(g, phi, r);
    ++j;
  }
  out.bound = j;
  return out;
}

CPhiCertificate c_phi(const VFGroup& g, const GEndo& phi, const FullyInvariantSubgroup& fi) {
  CPhiCertificate c;
  c.period = period_bound(g, phi, fi);
  c.straight = straight_bound(g, phi, fi);
  c.c_phi = c.period.bound + c.straight.bound;
  return c;
}

FiniteOrder is_finite_order(const VFGroup& g, const GEndo& phi, const CPhiCertificate& c) {
  FiniteOrder out;
  out.period = 1;
  for (const GElement& x : g.generators()) {
    const OrbitReport o = orbit(g, phi, x, c.c_phi);
    if (!o.finite()) return {};
    out.preperiod = std::max(out.preperiod, o.preperiod);
    out.period = std::lcm(out.period, o.period);
  }
  for (const GElement& x : g.generators()) {
    const GElement a = endo_apply_power(g, phi, x, out.preperiod);
    if (a != endo_apply_power(g, phi, a, out.period))
      throw Error("internal: phi^p != phi^(p+m) on a generator");
  }
  out.finite = true;
  return out;
}

std::optional<std::size_t> stabilizes(const VFGroup& g, const GEndo& phi,
                                      const CPhiCertificate& c) {
  std::size_t m = 0;
  for (const GElement& x : g.generators()) {
    const OrbitReport o = orbit(g, phi, x, c.c_phi);
    if (!o.finite() || o.period != 1) return std::nullopt;
    m = std::max(m, o.preperiod);
  }
  return m;
}

bool in_stable_kernel(const VFGroup& g, const GEndo& phi, const CPhiCertificate& c,
                      const GElement& x) {
  return endo_apply_power(g, phi, x, c.c_phi) == g.identity();
}

}  // namespace vfe
