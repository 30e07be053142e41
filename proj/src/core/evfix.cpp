#include "evfix.hpp"

#include <algorithm>
#include <numeric>

#include "errors.hpp"
#include "subgroup.hpp"

namespace vfe {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "YES";
    case Verdict::No: return "NO";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "?";
}

std::string to_string(EvFixReport::Branch b) {
  switch (b) {
    case EvFixReport::Branch::WholeGroup: return "whole-group";
    case EvFixReport::Branch::FiniteKernel: return "finite-kernel";
    case EvFixReport::Branch::Index: return "index";
  }
  return "?";
}

std::string to_string(Normality n) {
  switch (n) {
    case Normality::WholeGroup: return "WHOLE_GROUP";
    case Normality::KernelUnion: return "KERNEL_UNION";
    case Normality::NotNormal: return "NOT_NORMAL";
    case Normality::Unknown: return "UNKNOWN";
  }
  return "?";
}

bool in_evfix(const VFGroup& g, const GEndo& phi, const CPhiCertificate& c, const GElement& x) {
  const GElement y = endo_apply_power(g, phi, x, c.c_phi);
  return endo_apply(g, phi, y) == y;
}

bool in_evper(const VFGroup& g, const GEndo& phi, const CPhiCertificate& c, const GElement& x) {
  return orbit(g, phi, x, c.c_phi).finite();
}

bool kernel_finite(const VFGroup& g, const GEndo& phi, const FullyInvariantSubgroup& fi) {
  const Restriction psi = restrict_to_subgroup(g, phi, fi.automaton());
  return Automaton::from_generators(psi.endo.images(), fi.rank()).rank() == fi.rank();
}

std::vector<GElement> finite_stable_kernel(const VFGroup& g, const GEndo& phi,
                                           const FullyInvariantSubgroup& fi) {
  if (!kernel_finite(g, phi, fi)) throw DomainError("kernel is infinite");
  const Restriction psi = restrict_to_subgroup(g, phi, fi.automaton());
  std::vector<Word> images;
  for (const Word& w : psi.basis) images.push_back(endo_apply(g, phi, GElement{w, 0}).word);
  const TrackedAutomaton image(images, g.rank());

  // psi is injective, so each z has at most one preimage per F'-coset.
  auto preimages = [&](const GElement& z, std::vector<GElement>& out) {
    for (const GElement& b : fi.coset_reps()) {
      const GElement t = g.mult(z, g.inverse(endo_apply(g, phi, b)));
      if (t.coset != 0 || !image.automaton().contains(t.word)) continue;
      const GElement x = g.mult(GElement{evaluate(image.express(t.word), psi.basis), 0}, b);
      if (endo_apply(g, phi, x) != z) throw Error("internal: kernel preimage check failed");
      out.push_back(x);
    }
  };
  std::vector<GElement> kernel{g.identity()};
  while (true) {
    std::vector<GElement> next;
    for (const GElement& z : kernel) preimages(z, next);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.size() == kernel.size()) return next;
    kernel = std::move(next);
  }
}

namespace {

std::size_t reduced_count(const VFGroup& g, const FullyInvariantSubgroup& fi,
                          const std::vector<GElement>& gens) {
  return VSubgroup(g, fi, gens).reduced_generators().size();
}

}  // namespace

EvFixReport evfix_is_fg(const VFGroup& g, const GEndo& phi, const CPhiCertificate& c,
                        const FullyInvariantSubgroup& fi, const GFixResult& fix,
                        const EvFixOptions& opts) {
  EvFixReport r;
  r.kernel_finite = kernel_finite(g, phi, fi);
  const Restriction psi = restrict_to_subgroup(g, phi, fi.automaton());
  auto evfix = [&](const GElement& x) { return in_evfix(g, phi, c, x); };

  // Fix n F' is Fix(psi); the stable image may pin it down exactly.
  Automaton core = fix.core.subgroup;
  r.fix_complete = fix.core.complete;
  if (!r.fix_complete.certified) {
    if (auto exact = fix_from_stable_image(psi.endo)) {
      if (!is_subgroup(core, *exact)) throw Error("internal: bounded Fix exceeds exact Fix");
      core = std::move(*exact);
      r.fix_complete = {true, 0};
    }
  }
  const bool trust = r.fix_complete.certified || opts.trust_oracle;

  if (r.kernel_finite) r.kernel = finite_stable_kernel(g, phi, fi);
  // A monomorphism has EvFix = Fix, so its orbits need not be iterated.
  const bool mono = r.kernel_finite && r.kernel.size() == 1;
  const auto gens = g.generators();
  const bool whole = mono ? std::all_of(gens.begin(), gens.end(),
                                        [&](const GElement& x) { return endo_apply(g, phi, x) == x; })
                          : std::all_of(gens.begin(), gens.end(), evfix);
  if (whole) {
    r.branch = EvFixReport::Branch::WholeGroup;
    r.verdict = r.leaning = Verdict::Yes;
    r.generators = gens;
    r.generators_complete = {true, 0};
    r.reduced_count = reduced_count(g, fi, r.generators);
    return r;
  }

  if (r.kernel_finite) {
    // EvFix = Fix phi^-c = <Fix, Ker phi^c>; fixed points are their own preimages.
    r.branch = EvFixReport::Branch::FiniteKernel;
    r.verdict = r.leaning = Verdict::Yes;
    r.generators = fix.generators;
    for (const GElement& k : r.kernel)
      if (k != g.identity()) r.generators.push_back(k);
    r.generators_complete = fix.complete;
    if (fix.pieces.empty()) r.generators_complete = r.fix_complete;
    r.reduced_count = reduced_count(g, fi, r.generators);
    return r;
  }

  r.branch = EvFixReport::Branch::Index;
  const std::size_t k = psi.endo.alphabet_size();
  Automaton image = Automaton::whole_group(k);
  for (std::uint64_t j = 0; j < c.c_phi; ++j) {
    std::vector<Word> next;
    for (const Word& w : image.basis()) next.push_back(psi.endo.apply(w));
    image = Automaton::from_generators(next, k);
  }
  r.relative_index = relative_index(intersect(core, image), image);
  if (!r.relative_index) {
    r.leaning = Verdict::No;
    r.verdict = trust ? Verdict::No : Verdict::Unknown;
    if (r.verdict == Verdict::Unknown) {
      // If EvFix were finitely generated, [F' : EvFix n F'] <= rank(F') - 2,
      // so every element of F' would have an eventually fixed power of at
      // most that exponent.
      const long bound = std::max<long>(1, static_cast<long>(k) - 1);
      std::vector<Word> candidates = psi.basis;
      for (std::size_t i = 0; i < psi.basis.size(); ++i)
        for (std::size_t j = i + 1; j < psi.basis.size(); ++j)
          candidates.push_back(concat(psi.basis[i], psi.basis[j]));
      for (const Word& w : candidates) {
        bool some = false;
        for (long e = 1; e <= bound && !some; ++e) some = evfix(GElement{power(w, e), 0});
        if (!some) {
          r.power_witness = GElement{w, 0};
          r.verdict = Verdict::No;
          break;
        }
      }
    }
    return r;
  }
  // Finite index only grows more certain as Fix grows, so YES needs no trust.
  r.verdict = r.leaning = Verdict::Yes;
  r.generators_complete = {true, 0};

  // Coset enumeration of EvFix n F' in F' against the membership oracle. By
  // index coincidence there are exactly d cosets once Fix is complete.
  const std::size_t cap = *r.relative_index;
  auto to_f = [&](const Word& w) { return GElement{evaluate(w, psi.basis), 0}; };
  std::vector<Word> reps{Word()};
  std::vector<Edge> edges;
  for (std::size_t head = 0; head < reps.size(); ++head)
    for (std::uint32_t a = 0; a < k; ++a) {
      const Word w = concat(reps[head], Word::of(pos(a)));
      std::size_t target = reps.size();
      for (std::size_t j = 0; j < reps.size(); ++j)
        if (evfix(to_f(concat(w, invert(reps[j]))))) {
          target = j;
          break;
        }
      if (target == reps.size()) {
        if (reps.size() == cap) throw Error("internal: coset enumeration exceeded the index bound");
        reps.push_back(w);
      }
      edges.push_back({static_cast<std::uint32_t>(head), a, static_cast<std::uint32_t>(target)});
    }
  const Automaton e_free = Automaton::from_edges(reps.size(), 0, edges, k);
  if (!e_free.is_complete() || e_free.vertex_count() != reps.size())
    throw Error("internal: enumerated coset table is not a permutation action");
  r.index_in_f = reps.size();
  for (const Word& w : e_free.basis()) r.generators.push_back(to_f(w));
  const auto& fi_reps = fi.coset_reps();
  for (std::size_t i = 1; i < fi_reps.size(); ++i)
    for (const Word& w : reps)
      if (const GElement x = g.mult(to_f(w), fi_reps[i]); evfix(x)) {
        r.generators.push_back(x);
        break;
      }
  r.reduced_count = reduced_count(g, fi, r.generators);
  return r;
}

EvFixReport evfix_is_fg(const VFGroup& g, const GEndo& phi, const FullyInvariantSubgroup& fi,
                        const EvFixOptions& opts) {
  const CPhiCertificate c = c_phi(g, phi, fi);
  const GFixResult fix = fix_vfree(g, phi, fi, opts.fix);
  return evfix_is_fg(g, phi, c, fi, fix, opts);
}

unsigned long period_exponent(const VFGroup& g, const GEndo& phi,
                              const FullyInvariantSubgroup& fi) {
  if (g.is_free()) {
    // Periodic points lie in the stable image; of rank <= 1 it pins the periods.
    const FreeEndo f = free_part(phi, g.rank());
    const StableImage s = stable_image(f);
    if (s.image.rank() == 0) return 1;
    if (s.image.rank() == 1) {
      const Word z = s.image.basis().front();
      return f.apply(z) == invert(z) ? 2 : 1;
    }
  }
  // A period of x in F'b_i is p_i times a period of the auxiliary
  // endomorphism of F' * <c>, so it divides lcm(p_i) * aut_order_lcm(r + 1).
  const std::size_t n = g.is_free() ? g.rank() : fi.rank() + 1;
  std::uint64_t e = aut_order_lcm(n);
  if (!g.is_free()) {
    std::uint64_t periods = 1;
    for (const auto& c : period_bound(g, phi, fi).cosets)
      if (c.period) periods = std::lcm(periods, static_cast<std::uint64_t>(*c.period));
    if (__builtin_mul_overflow(e, periods, &e)) throw ResourceError("period exponent overflows");
  }
  return e;
}

EvFixReport evper_is_fg(const VFGroup& g, const GEndo& phi, const FullyInvariantSubgroup& fi,
                        const EvFixOptions& opts) {
  const unsigned long e = period_exponent(g, phi, fi);
  const GEndo phi_e = power(g, phi, e);
  EvFixReport r = evfix_is_fg(g, phi_e, fi, opts);
  r.power = e;
  return r;
}

NormalityReport normality_free(const FreeEndo& phi, const CPhiCertificate& c, const FixResult& fix,
                               bool trust_oracle) {
  NormalityReport r;
  const std::size_t n = phi.alphabet_size();
  auto eventually_fixed = [&](const Word& x) {
    Word y = x;
    for (std::uint64_t i = 0; i < c.c_phi; ++i) y = phi.apply(y);
    return phi.apply(y) == y;
  };
  bool all = true;
  for (std::uint32_t a = 0; a < n && all; ++a) all = eventually_fixed(Word::of(pos(a)));

  bool trivial = fix.subgroup.is_trivial();
  r.fix_complete = fix.complete;
  if (trivial && !fix.complete.certified) {
    if (auto exact = fix_from_stable_image(phi)) {
      trivial = exact->is_trivial();
      r.fix_complete = {true, 0};
    }
  }
  if (all) {
    r.verdict = r.leaning = Normality::WholeGroup;
    r.vanishing = trivial && r.fix_complete.certified;
    return r;
  }
  if (!trivial) {
    r.verdict = r.leaning = Normality::NotNormal;
    return r;
  }
  r.leaning = Normality::KernelUnion;
  r.verdict = r.fix_complete.certified || trust_oracle ? Normality::KernelUnion : Normality::Unknown;
  return r;
}

std::size_t rank_bound(const FullyInvariantSubgroup& fi) {
  const long r = static_cast<long>(fi.rank());
  return fi.index_in_g() + static_cast<std::size_t>(std::max(r, r * r - 3 * r + 3));
}

}  // namespace vfe
