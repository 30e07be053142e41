#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "words.hpp"

namespace vfe {

// Index of a subgroup: a natural number, or nullopt for INFINITE.
using Index = std::optional<std::size_t>;
inline constexpr std::nullopt_t kInfinite = std::nullopt;

struct Edge {
  std::uint32_t source = 0;
  std::uint32_t gen = 0;  // positive label
  std::uint32_t target = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

class TrackedAutomaton;

// Folded core graph of a finitely generated subgroup of a free group.
// Vertices are renumbered canonically (breadth-first from the base, letters
// in the order a, a^-1, b, b^-1, ...), so two automata compare equal exactly
// when they are isomorphic as based labelled graphs. The base is vertex 0.
class Automaton {
 public:
  // The trivial subgroup.
  explicit Automaton(std::size_t alphabet_size = 0);

  static Automaton from_generators(std::span<const Word> gens,
                                   std::size_t alphabet_size);
  // Folds and prunes an arbitrary labelled graph.
  static Automaton from_edges(std::size_t vertex_count, std::uint32_t base,
                              std::span<const Edge> edges,
                              std::size_t alphabet_size);
  static Automaton whole_group(std::size_t alphabet_size);

  std::size_t alphabet_size() const { return n_; }
  std::size_t vertex_count() const { return out_.size() / stride(); }
  std::size_t edge_count() const { return edge_count_; }
  static constexpr std::uint32_t base() { return 0; }

  std::optional<std::uint32_t> step(std::uint32_t v, Letter x) const;
  // Vertex reached by reading w from `from`, if the path exists.
  std::optional<std::uint32_t> read(std::uint32_t from, const Word& w) const;
  bool contains(const Word& w) const { return read(0, w) == 0u; }
  bool contains_all(std::span<const Word> ws) const;

  std::size_t rank() const { return edge_count_ + 1 - vertex_count(); }
  bool is_trivial() const { return edge_count_ == 0; }
  bool is_complete() const;
  bool is_whole_group() const { return vertex_count() == 1 && is_complete(); }
  Index index() const;

  // Label of the spanning-tree path from the base to each vertex.
  const std::vector<Word>& tree_labels() const { return tree_labels_; }
  // Right coset representatives, one per vertex; throws DomainError when the
  // index is infinite.
  std::vector<Word> coset_reps() const;

  std::vector<Word> basis() const;
  std::vector<Edge> edges() const;
  // Expresses a member in the coordinates of basis(): letter i of the result
  // stands for basis()[i]. Throws DomainError for non-members.
  Word rewrite_in_basis(const Word& w) const;

  // One `v --label--> w` line per edge after a `base 0` header.
  std::string dump(const Alphabet* names = nullptr) const;

  friend bool operator==(const Automaton& a, const Automaton& b) {
    return a.n_ == b.n_ && a.out_ == b.out_;
  }

 private:
  friend class TrackedAutomaton;
  friend class Folder;
  std::size_t stride() const { return n_ == 0 ? 1 : n_; }
  void finish();  // fills in-table, tree, basis index

  std::size_t n_ = 0;
  std::vector<std::int32_t> out_;  // out_[v*n + g] = target or -1
  std::vector<std::int32_t> in_;
  std::size_t edge_count_ = 0;
  std::vector<Word> tree_labels_;
  // basis_slot_[v*n + g] = basis index of the out-edge, or -1 for tree edges
  std::vector<std::int32_t> basis_slot_;
  std::vector<Edge> basis_edges_;
};

// Automaton whose edges also remember a word in the original generators, so
// that members can be written as products of those generators.
class TrackedAutomaton {
 public:
  TrackedAutomaton(std::span<const Word> gens, std::size_t alphabet_size);

  const Automaton& automaton() const { return aut_; }
  std::size_t generator_count() const { return k_; }
  // Word over the generator alphabet (letter i = gens[i]) evaluating to w.
  // Throws DomainError for non-members.
  Word express(const Word& w) const;

 private:
  Automaton aut_;
  std::size_t k_;
  std::vector<Word> tags_;  // per out-slot, parallel to aut_.out_
};

Automaton intersect(const Automaton& a, const Automaton& b);
// True iff every basis word of h lies in k.
bool is_subgroup(const Automaton& h, const Automaton& k);
// [K : H]; throws DomainError unless H <= K.
Index relative_index(const Automaton& h, const Automaton& k);
// Substitutes word i of `values` for letter i of w.
Word evaluate(const Word& w, std::span<const Word> values);

}  // namespace vfe
