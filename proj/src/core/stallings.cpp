#include "stallings.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "errors.hpp"

namespace vfe {

// Folding engine shared by the plain and tracked constructions. Vertices are
// merged pairwise; when tracking, every edge carries a tag word and the
// absorbed vertex's edges are retagged so that reading a closed path at the
// base still multiplies out to the label read.
class Folder {
 public:
  Folder(std::size_t alphabet_size, bool tracked)
      : n_(alphabet_size), tracked_(tracked) {
    add_vertex();
  }

  std::uint32_t add_vertex() {
    adj_.emplace_back();
    alive_.push_back(true);
    return static_cast<std::uint32_t>(adj_.size() - 1);
  }

  void add_edge(std::uint32_t s, std::uint32_t g, std::uint32_t t, Word tag) {
    if (g >= n_)
      throw DomainError("generator id " + std::to_string(g) +
                        " outside alphabet of size " + std::to_string(n_));
    const auto id = static_cast<std::uint32_t>(edges_.size());
    edges_.push_back({s, g, t, tracked_ ? std::move(tag) : Word(), true});
    adj_[s].push_back(id);
    if (t != s) adj_[t].push_back(id);
  }

  // Closed path at the base spelling w; the first edge carries `tag`.
  void add_petal(const Word& w, const Word& tag) {
    if (w.empty()) return;
    std::uint32_t cur = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::uint32_t next = i + 1 == w.size() ? 0 : add_vertex();
      const Word t = i == 0 ? tag : Word();
      if (!w[i].inverse)
        add_edge(cur, w[i].gen, next, t);
      else
        add_edge(next, w[i].gen, cur, invert(t));
      cur = next;
    }
  }

  void fold() {
    std::deque<std::uint32_t> work;
    for (std::uint32_t v = 0; v < adj_.size(); ++v) work.push_back(v);
    std::vector<std::int32_t> slot(2 * n_);
    while (!work.empty()) {
      const std::uint32_t v = work.front();
      work.pop_front();
      if (!alive_[v]) continue;
      bool again = true;
      while (again && alive_[v]) {
        again = false;
        compact(v);
        std::fill(slot.begin(), slot.end(), -1);
        for (std::uint32_t id : adj_[v]) {
          const E& e = edges_[id];
          for (int dir = 0; dir < 2 && !again; ++dir) {
            if ((dir == 0 ? e.s : e.t) != v) continue;
            auto& occupant = slot[2 * e.g + dir];
            if (occupant < 0) {
              occupant = static_cast<std::int32_t>(id);
              continue;
            }
            resolve(static_cast<std::uint32_t>(occupant), id, dir, work);
            work.push_back(v);
            again = true;
          }
          if (again) break;
        }
      }
    }
  }

  // Prunes to the core, renumbers canonically and emits the automaton;
  // `tags` receives the per-slot tags when tracking.
  Automaton build(std::vector<Word>* tags) {
    std::vector<std::size_t> degree(adj_.size(), 0);
    for (const E& e : edges_) {
      if (!e.alive) continue;
      ++degree[e.s];
      ++degree[e.t];
    }
    std::vector<std::uint32_t> stack;
    for (std::uint32_t v = 1; v < adj_.size(); ++v)
      if (alive_[v] && degree[v] <= 1) stack.push_back(v);
    while (!stack.empty()) {
      const std::uint32_t v = stack.back();
      stack.pop_back();
      if (!alive_[v]) continue;
      alive_[v] = false;
      for (std::uint32_t id : adj_[v]) {
        E& e = edges_[id];
        if (!e.alive) continue;
        e.alive = false;
        const std::uint32_t other = e.s == v ? e.t : e.s;
        if (other == v) continue;
        if (--degree[other] <= 1 && other != 0 && alive_[other])
          stack.push_back(other);
      }
    }

    const std::size_t stride = n_ == 0 ? 1 : n_;
    std::vector<std::int32_t> out_edge(adj_.size() * stride, -1);
    std::vector<std::int32_t> in_edge(adj_.size() * stride, -1);
    for (std::uint32_t id = 0; id < edges_.size(); ++id) {
      const E& e = edges_[id];
      if (!e.alive) continue;
      out_edge[e.s * stride + e.g] = static_cast<std::int32_t>(id);
      in_edge[e.t * stride + e.g] = static_cast<std::int32_t>(id);
    }

    std::vector<std::int32_t> renum(adj_.size(), -1);
    std::vector<std::uint32_t> order{0};
    renum[0] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
      const std::uint32_t v = order[head];
      for (std::uint32_t g = 0; g < n_; ++g) {
        for (int dir = 0; dir < 2; ++dir) {
          const std::int32_t id = (dir == 0 ? out_edge : in_edge)[v * stride + g];
          if (id < 0) continue;
          const E& e = edges_[static_cast<std::size_t>(id)];
          const std::uint32_t w = dir == 0 ? e.t : e.s;
          if (renum[w] < 0) {
            renum[w] = static_cast<std::int32_t>(order.size());
            order.push_back(w);
          }
        }
      }
    }

    Automaton aut(n_);
    aut.out_.assign(order.size() * stride, -1);
    if (tags) tags->assign(order.size() * stride, Word());
    for (std::uint32_t v : order) {
      for (std::uint32_t g = 0; g < n_; ++g) {
        const std::int32_t id = out_edge[v * stride + g];
        if (id < 0) continue;
        const E& e = edges_[static_cast<std::size_t>(id)];
        const auto slot = static_cast<std::size_t>(renum[v]) * stride + g;
        aut.out_[slot] = renum[e.t];
        if (tags) (*tags)[slot] = e.tag;
      }
    }
    aut.finish();
    return aut;
  }

 private:
  struct E {
    std::uint32_t s, g, t;
    Word tag;
    bool alive;
  };

  void compact(std::uint32_t v) {
    auto& list = adj_[v];
    list.erase(std::remove_if(list.begin(), list.end(),
                              [&](std::uint32_t id) { return !edges_[id].alive; }),
               list.end());
  }

  // e1 and e2 leave (dir 0) or enter (dir 1) the same vertex with one label.
  void resolve(std::uint32_t e1, std::uint32_t e2, int dir,
               std::deque<std::uint32_t>& work) {
    const E& x = edges_[e1];
    const E& y = edges_[e2];
    const std::uint32_t a = dir == 0 ? x.t : x.s;
    const std::uint32_t b = dir == 0 ? y.t : y.s;
    if (a != b) {
      // pi = h(a) h(b)^-1 where h is the implicit vertex potential.
      Word pi;
      if (tracked_)
        pi = dir == 0 ? concat(invert(x.tag), y.tag) : concat(x.tag, invert(y.tag));
      std::uint32_t keep = a, gone = b;
      const bool swap = gone == 0 ||
                        (keep != 0 && adj_[gone].size() > adj_[keep].size());
      if (swap) {
        std::swap(keep, gone);
        if (tracked_) pi = invert(pi);
      }
      edges_[e2].alive = false;
      absorb(gone, keep, pi);
      work.push_back(keep);
    } else {
      edges_[e2].alive = false;
    }
  }

  void absorb(std::uint32_t gone, std::uint32_t keep, const Word& pi) {
    const Word pi_inv = tracked_ ? invert(pi) : Word();
    for (std::uint32_t id : adj_[gone]) {
      E& e = edges_[id];
      if (!e.alive) continue;
      const bool known = e.s == keep || e.t == keep;
      if (e.s == gone) {
        if (tracked_) e.tag = concat(pi, e.tag);
        e.s = keep;
      }
      if (e.t == gone) {
        if (tracked_) e.tag = concat(e.tag, pi_inv);
        e.t = keep;
      }
      if (!known) adj_[keep].push_back(id);
    }
    adj_[gone].clear();
    alive_[gone] = false;
  }

  std::size_t n_;
  bool tracked_;
  std::vector<E> edges_;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<bool> alive_;
};

Automaton::Automaton(std::size_t alphabet_size) : n_(alphabet_size) {
  out_.assign(stride(), -1);
  finish();
}

Automaton Automaton::from_generators(std::span<const Word> gens,
                                     std::size_t alphabet_size) {
  Folder f(alphabet_size, false);
  for (const Word& w : gens) f.add_petal(w, Word());
  f.fold();
  return f.build(nullptr);
}

Automaton Automaton::from_edges(std::size_t vertex_count, std::uint32_t base,
                                std::span<const Edge> edges,
                                std::size_t alphabet_size) {
  if (base >= vertex_count) throw DomainError("base vertex out of range");
  Folder f(alphabet_size, false);
  // Folder's vertex 0 is the base; swap labels 0 and `base`.
  auto map = [&](std::uint32_t v) {
    if (v >= vertex_count) throw DomainError("edge endpoint out of range");
    return v == base ? 0u : (v == 0 ? base : v);
  };
  for (std::size_t v = 1; v < vertex_count; ++v) f.add_vertex();
  for (const Edge& e : edges) f.add_edge(map(e.source), e.gen, map(e.target), Word());
  f.fold();
  return f.build(nullptr);
}

Automaton Automaton::whole_group(std::size_t alphabet_size) {
  std::vector<Word> gens;
  for (std::uint32_t g = 0; g < alphabet_size; ++g) gens.push_back(Word::of(pos(g)));
  return from_generators(gens, alphabet_size);
}

void Automaton::finish() {
  const std::size_t s = stride();
  const std::size_t nv = vertex_count();
  in_.assign(out_.size(), -1);
  edge_count_ = 0;
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t g = 0; g < n_; ++g)
      if (std::int32_t t = out_[v * s + g]; t >= 0) {
        in_[static_cast<std::size_t>(t) * s + g] = static_cast<std::int32_t>(v);
        ++edge_count_;
      }

  tree_labels_.assign(nv, Word());
  std::vector<bool> seen(nv, false), tree_slot(out_.size(), false);
  std::vector<std::uint32_t> queue{0};
  seen[0] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t v = queue[head];
    for (std::uint32_t g = 0; g < n_; ++g) {
      if (std::int32_t t = out_[v * s + g]; t >= 0 && !seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = true;
        tree_slot[v * s + g] = true;
        tree_labels_[static_cast<std::size_t>(t)] =
            concat(tree_labels_[v], Word::of(pos(g)));
        queue.push_back(static_cast<std::uint32_t>(t));
      }
      if (std::int32_t u = in_[v * s + g]; u >= 0 && !seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = true;
        tree_slot[static_cast<std::size_t>(u) * s + g] = true;
        tree_labels_[static_cast<std::size_t>(u)] =
            concat(tree_labels_[v], Word::of(neg(g)));
        queue.push_back(static_cast<std::uint32_t>(u));
      }
    }
  }

  basis_slot_.assign(out_.size(), -1);
  basis_edges_.clear();
  for (std::uint32_t g = 0; g < n_; ++g)
    for (std::uint32_t v = 0; v < nv; ++v) {
      const std::int32_t t = out_[v * s + g];
      if (t < 0 || tree_slot[v * s + g]) continue;
      basis_slot_[v * s + g] = static_cast<std::int32_t>(basis_edges_.size());
      basis_edges_.push_back({v, g, static_cast<std::uint32_t>(t)});
    }
}

std::optional<std::uint32_t> Automaton::step(std::uint32_t v, Letter x) const {
  if (x.gen >= n_ || v >= vertex_count()) return std::nullopt;
  const std::int32_t t = (x.inverse ? in_ : out_)[v * stride() + x.gen];
  if (t < 0) return std::nullopt;
  return static_cast<std::uint32_t>(t);
}

std::optional<std::uint32_t> Automaton::read(std::uint32_t from, const Word& w) const {
  std::uint32_t v = from;
  for (Letter x : w) {
    auto next = step(v, x);
    if (!next) return std::nullopt;
    v = *next;
  }
  return v;
}

bool Automaton::contains_all(std::span<const Word> ws) const {
  return std::all_of(ws.begin(), ws.end(), [&](const Word& w) { return contains(w); });
}

bool Automaton::is_complete() const {
  return std::none_of(out_.begin(), out_.begin() + static_cast<long>(vertex_count() * n_),
                      [](std::int32_t t) { return t < 0; }) &&
         std::none_of(in_.begin(), in_.begin() + static_cast<long>(vertex_count() * n_),
                      [](std::int32_t t) { return t < 0; });
}

Index Automaton::index() const {
  if (!is_complete()) return kInfinite;
  return vertex_count();
}

std::vector<Word> Automaton::coset_reps() const {
  if (!is_complete()) throw DomainError("subgroup has infinite index");
  return tree_labels_;
}

std::vector<Word> Automaton::basis() const {
  std::vector<Word> out;
  out.reserve(basis_edges_.size());
  for (const Edge& e : basis_edges_) {
    WordBuilder b(tree_labels_[e.source]);
    b.push(pos(e.gen));
    b.append_inverse(tree_labels_[e.target]);
    out.push_back(std::move(b).build());
  }
  return out;
}

std::vector<Edge> Automaton::edges() const {
  std::vector<Edge> out;
  const std::size_t s = stride();
  for (std::uint32_t v = 0; v < vertex_count(); ++v)
    for (std::uint32_t g = 0; g < n_; ++g)
      if (std::int32_t t = out_[v * s + g]; t >= 0)
        out.push_back({v, g, static_cast<std::uint32_t>(t)});
  return out;
}

Word Automaton::rewrite_in_basis(const Word& w) const {
  WordBuilder b;
  std::uint32_t v = 0;
  const std::size_t s = stride();
  for (Letter x : w) {
    auto next = step(v, x);
    if (!next) throw DomainError("word is not in the subgroup");
    const std::size_t slot = (x.inverse ? *next : v) * s + x.gen;
    if (basis_slot_[slot] >= 0)
      b.push(Letter{static_cast<std::uint32_t>(basis_slot_[slot]), x.inverse});
    v = *next;
  }
  if (v != 0) throw DomainError("word is not in the subgroup");
  return std::move(b).build();
}

std::string Automaton::dump(const Alphabet* names) const {
  std::string out = "base 0\n";
  for (const Edge& e : edges()) {
    out += std::to_string(e.source) + " --";
    out += names ? names->format(pos(e.gen)) : "x" + std::to_string(e.gen + 1);
    out += "--> " + std::to_string(e.target) + "\n";
  }
  return out;
}

TrackedAutomaton::TrackedAutomaton(std::span<const Word> gens,
                                   std::size_t alphabet_size)
    : k_(gens.size()) {
  Folder f(alphabet_size, true);
  for (std::uint32_t i = 0; i < gens.size(); ++i)
    f.add_petal(gens[i], Word::of(pos(i)));
  f.fold();
  aut_ = f.build(&tags_);
}

Word TrackedAutomaton::express(const Word& w) const {
  WordBuilder b;
  std::uint32_t v = 0;
  const std::size_t s = aut_.stride();
  for (Letter x : w) {
    auto next = aut_.step(v, x);
    if (!next) throw DomainError("word is not in the subgroup");
    if (x.inverse)
      b.append_inverse(tags_[*next * s + x.gen]);
    else
      b.append(tags_[v * s + x.gen]);
    v = *next;
  }
  if (v != 0) throw DomainError("word is not in the subgroup");
  return std::move(b).build();
}

Automaton intersect(const Automaton& a, const Automaton& b) {
  if (a.alphabet_size() != b.alphabet_size())
    throw DomainError("intersection of automata over different alphabets");
  const std::size_t n = a.alphabet_size();
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> ids;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> order{{0, 0}};
  ids[{0, 0}] = 0;
  std::vector<Edge> edges;
  auto id_of = [&](std::uint32_t p, std::uint32_t q) {
    auto [it, fresh] = ids.try_emplace({p, q}, static_cast<std::uint32_t>(order.size()));
    if (fresh) order.emplace_back(p, q);
    return it->second;
  };
  for (std::size_t head = 0; head < order.size(); ++head) {
    const auto [p, q] = order[head];
    const auto self = static_cast<std::uint32_t>(head);
    for (std::uint32_t g = 0; g < n; ++g) {
      auto pa = a.step(p, pos(g)), qb = b.step(q, pos(g));
      if (pa && qb) edges.push_back({self, g, id_of(*pa, *qb)});
      auto pi = a.step(p, neg(g)), qi = b.step(q, neg(g));
      if (pi && qi) id_of(*pi, *qi);  // its out-edge is added when visited
    }
  }
  return Automaton::from_edges(order.size(), 0, edges, n);
}

bool is_subgroup(const Automaton& h, const Automaton& k) {
  return h.alphabet_size() == k.alphabet_size() && k.contains_all(h.basis());
}

Index relative_index(const Automaton& h, const Automaton& k) {
  if (!is_subgroup(h, k)) throw DomainError("first subgroup is not contained in the second");
  std::vector<Word> coords;
  for (const Word& w : h.basis()) coords.push_back(k.rewrite_in_basis(w));
  return Automaton::from_generators(coords, k.rank()).index();
}

Word evaluate(const Word& w, std::span<const Word> values) {
  WordBuilder b;
  for (Letter x : w) {
    if (x.gen >= values.size()) throw DomainError("letter outside substitution range");
    if (x.inverse)
      b.append_inverse(values[x.gen]);
    else
      b.append(values[x.gen]);
  }
  return std::move(b).build();
}

}  // namespace vfe
