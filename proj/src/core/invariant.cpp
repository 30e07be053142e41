#include "invariant.hpp"

#include <algorithm>
#include <numeric>

#include "errors.hpp"

namespace vfe {

namespace {

Perm identity_perm(std::size_t d) {
  Perm p(d);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_mult(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[x] = q[p[x]];
  return r;
}

Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[p[x]] = static_cast<std::uint8_t>(x);
  return r;
}

std::vector<Perm> all_perms(std::size_t d) {
  std::vector<Perm> out;
  Perm p = identity_perm(d);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// One permutation per cycle type: cycles laid out on consecutive points.
std::vector<Perm> cycle_type_reps(std::size_t d) {
  std::vector<Perm> out;
  std::vector<std::size_t> parts;
  auto rec = [&](auto&& self, std::size_t left, std::size_t max_part) -> void {
    if (left == 0) {
      Perm p(d);
      std::size_t at = 0;
      for (std::size_t len : parts) {
        for (std::size_t k = 0; k < len; ++k)
          p[at + k] = static_cast<std::uint8_t>(at + (k + 1) % len);
        at += len;
      }
      out.push_back(p);
      return;
    }
    for (std::size_t part = std::min(left, max_part); part >= 1; --part) {
      parts.push_back(part);
      self(self, left - part, part);
      parts.pop_back();
    }
  };
  rec(rec, d, d);
  return out;
}

// Relations of G over generator indices, as signed 1-based letters.
struct Relation {
  std::vector<int> lhs, rhs;
  std::size_t last_gen;
};

std::vector<Relation> relations(const VFGroup& g) {
  const Presentation& p = g.presentation();
  const std::size_t n = g.rank(), m = g.coset_count();
  auto b = [&](std::size_t i) { return static_cast<int>(n + i); };  // 1-based index of b_i
  auto letters = [](const Word& w) {
    std::vector<int> out;
    for (Letter x : w) out.push_back(x.inverse ? -static_cast<int>(x.gen + 1) : static_cast<int>(x.gen + 1));
    return out;
  };
  std::vector<Relation> out;
  auto add = [&](std::vector<int> lhs, std::vector<int> rhs) {
    std::size_t last = 0;
    for (int x : lhs) last = std::max(last, static_cast<std::size_t>(std::abs(x) - 1));
    for (int x : rhs) last = std::max(last, static_cast<std::size_t>(std::abs(x) - 1));
    out.push_back({std::move(lhs), std::move(rhs), last});
  };
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t a = 0; a < n; ++a) {
      auto rhs = letters(p.twist[i][a]);
      rhs.push_back(b(i));
      add({b(i), static_cast<int>(a + 1)}, std::move(rhs));
    }
    for (std::size_t j = 1; j < m; ++j) {
      auto rhs = letters(p.product_word[i][j]);
      if (p.product_coset[i][j] != 0) rhs.push_back(b(p.product_coset[i][j]));
      add({b(i), b(j)}, std::move(rhs));
    }
  }
  return out;
}

Perm eval(const std::vector<int>& w, const std::vector<Perm>& images,
          const std::vector<Perm>& inverses, std::size_t d) {
  Perm r = identity_perm(d);
  for (int x : w) {
    const std::size_t k = static_cast<std::size_t>(std::abs(x) - 1);
    r = perm_mult(r, x > 0 ? images[k] : inverses[k]);
  }
  return r;
}

std::size_t closure_size(const std::vector<Perm>& gens, std::size_t d, std::size_t cap) {
  std::vector<Perm> seen{identity_perm(d)};
  for (std::size_t head = 0; head < seen.size(); ++head)
    for (const Perm& s : gens) {
      Perm p = perm_mult(seen[head], s);
      if (std::find(seen.begin(), seen.end(), p) == seen.end()) {
        seen.push_back(std::move(p));
        if (seen.size() > cap) return seen.size();
      }
    }
  return seen.size();
}

}  // namespace

std::vector<PermHom> enumerate_small_quotient_homs(const VFGroup& g, std::size_t d,
                                                   bool up_to_conjugacy) {
  if (d == 0) throw DomainError("degree must be positive");
  if (d > 255) throw ResourceError("permutation degree too large");
  const std::size_t count = g.rank() + g.coset_count() - 1;
  const auto rels = relations(g);
  const auto perms = all_perms(d);
  const auto reps = cycle_type_reps(d);
  std::vector<PermHom> out;
  std::vector<Perm> images(count), inverses(count);
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == count) {
      if (closure_size(images, d, d) <= d) out.push_back({d, images});
      return;
    }
    const auto& choices = (k == 0 && up_to_conjugacy) ? reps : perms;
    for (const Perm& p : choices) {
      images[k] = p;
      inverses[k] = perm_inverse(p);
      bool ok = true;
      for (const Relation& r : rels)
        if (r.last_gen == k &&
            eval(r.lhs, images, inverses, d) != eval(r.rhs, images, inverses, d)) {
          ok = false;
          break;
        }
      if (ok) self(self, k + 1);
    }
  };
  rec(rec, 0);
  return out;
}

Perm perm_image(const PermHom& h, std::size_t rank, const GElement& x) {
  Perm r = identity_perm(h.degree);
  for (Letter l : x.word)
    r = perm_mult(r, l.inverse ? perm_inverse(h.images[l.gen]) : h.images[l.gen]);
  if (x.coset != 0) r = perm_mult(r, h.images[rank + x.coset - 1]);
  return r;
}

std::size_t image_size(const PermHom& h) {
  return closure_size(h.images, h.degree, std::numeric_limits<std::size_t>::max());
}

FullyInvariantSubgroup::Tuple FullyInvariantSubgroup::tuple_of(const GElement& x) const {
  const std::size_t width = homs_.size() * degree_;
  Tuple t(width);
  for (std::size_t k = 0; k < width; ++k) t[k] = static_cast<std::uint8_t>(k % degree_);
  auto step = [&](const Tuple& s) {
    for (std::size_t k = 0; k < width; ++k) {
      const std::size_t off = k - k % degree_;
      t[k] = s[off + t[k]];
    }
  };
  for (Letter l : x.word) step(l.inverse ? gen_inverse_tuples_[l.gen] : gen_tuples_[l.gen]);
  if (x.coset != 0) step(gen_tuples_[rank_ + x.coset - 1]);
  return t;
}

std::uint32_t FullyInvariantSubgroup::coset_of(const GElement& x) const {
  auto it = position_.find(tuple_of(x));
  if (it == position_.end()) throw Error("element outside the computed quotient");
  return it->second;
}

FullyInvariantSubgroup compute_fully_invariant(const VFGroup& g, const InvariantOptions& opts) {
  const std::size_t m = g.coset_count(), n = g.rank();
  if (m > opts.max_degree)
    throw ResourceError("coset count " + std::to_string(m) + " exceeds the limit of " +
                        std::to_string(opts.max_degree));
  const std::size_t count = n + m - 1;
  using Tuple = std::vector<std::uint8_t>;

  // The quotient Q = image of G in the product of the accepted homs, stored
  // as a Cayley table over the generators with a breadth-first tree.
  struct Quotient {
    std::vector<Tuple> elements;
    std::vector<std::vector<std::uint32_t>> next;  // [q][s]
    std::vector<std::pair<std::uint32_t, std::uint32_t>> parent;
  };
  std::vector<PermHom> accepted;
  auto build = [&]() {
    Quotient q;
    std::vector<Tuple> gens(count);
    for (std::size_t s = 0; s < count; ++s)
      for (const PermHom& h : accepted) gens[s].insert(gens[s].end(), h.images[s].begin(), h.images[s].end());
    Tuple id;
    for (std::size_t k = 0; k < accepted.size(); ++k)
      for (std::size_t x = 0; x < m; ++x) id.push_back(static_cast<std::uint8_t>(x));
    std::map<Tuple, std::uint32_t> pos{{id, 0}};
    q.elements.push_back(id);
    q.parent.emplace_back(0, 0);
    for (std::size_t head = 0; head < q.elements.size(); ++head) {
      q.next.emplace_back(count);
      for (std::size_t s = 0; s < count; ++s) {
        const Tuple& cur = q.elements[head];
        Tuple t(cur.size());
        for (std::size_t k = 0; k < cur.size(); ++k) t[k] = gens[s][k - k % m + cur[k]];
        auto [it, fresh] = pos.try_emplace(t, static_cast<std::uint32_t>(q.elements.size()));
        if (fresh) {
          if (q.elements.size() >= opts.max_quotient)
            throw ResourceError("finite quotient exceeds " + std::to_string(opts.max_quotient) +
                                " elements");
          q.elements.push_back(std::move(t));
          q.parent.emplace_back(static_cast<std::uint32_t>(head), static_cast<std::uint32_t>(s));
        }
        q.next[head][s] = it->second;
      }
    }
    return q;
  };

  Quotient q = build();
  for (const PermHom& sigma : enumerate_small_quotient_homs(g, m, true)) {
    // sigma kills the current intersection iff it factors through Q, i.e.
    // it is constant on the Schreier generators of the kernel.
    std::vector<Perm> at(q.elements.size());
    at[0] = identity_perm(m);
    for (std::size_t e = 1; e < q.elements.size(); ++e)
      at[e] = perm_mult(at[q.parent[e].first], sigma.images[q.parent[e].second]);
    bool factors = true;
    for (std::size_t e = 0; e < q.elements.size() && factors; ++e)
      for (std::size_t s = 0; s < count && factors; ++s)
        factors = perm_mult(at[e], sigma.images[s]) == at[q.next[e][s]];
    if (factors) continue;
    accepted.push_back(sigma);
    q = build();
  }

  FullyInvariantSubgroup out;
  out.rank_ = n;
  out.degree_ = m;
  out.homs_ = accepted;
  for (std::size_t s = 0; s < count; ++s) {
    Tuple t, ti;
    for (const PermHom& h : accepted) {
      t.insert(t.end(), h.images[s].begin(), h.images[s].end());
      const Perm inv = perm_inverse(h.images[s]);
      ti.insert(ti.end(), inv.begin(), inv.end());
    }
    out.gen_tuples_.push_back(std::move(t));
    out.gen_inverse_tuples_.push_back(std::move(ti));
  }
  auto gen_element = [&](std::size_t s) {
    return s < n ? g.letter(pos(static_cast<std::uint32_t>(s)))
                 : g.coset_rep(static_cast<std::uint32_t>(s - n + 1));
  };
  out.reps_.push_back(g.identity());
  for (std::size_t e = 1; e < q.elements.size(); ++e)
    out.reps_.push_back(g.mult(out.reps_[q.parent[e].first], gen_element(q.parent[e].second)));
  for (std::size_t e = 0; e < q.elements.size(); ++e)
    out.position_.emplace(q.elements[e], static_cast<std::uint32_t>(e));

  // F' inside F: the Schreier graph of F on the orbit of the identity.
  std::map<std::uint32_t, std::uint32_t> local{{0, 0}};
  std::vector<std::uint32_t> order{0};
  std::vector<Edge> edges;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (std::uint32_t a = 0; a < n; ++a) {
      const std::uint32_t t = q.next[order[head]][a];
      auto [it, fresh] = local.try_emplace(t, static_cast<std::uint32_t>(order.size()));
      if (fresh) order.push_back(t);
      edges.push_back({static_cast<std::uint32_t>(head), a, it->second});
    }
  out.automaton_ = Automaton::from_edges(order.size(), 0, edges, n);
  return out;
}

}  // namespace vfe
