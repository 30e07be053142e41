#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "stallings.hpp"
#include "vfree.hpp"

namespace vfe {

// Permutation of {0..d-1}, acting on the right: (p * q)[x] = q[p[x]].
using Perm = std::vector<std::uint8_t>;

// Homomorphism G -> Sym(d) given by the images of the generators of G
// (free letters first, then b_2..b_m).
struct PermHom {
  std::size_t degree = 0;
  std::vector<Perm> images;
  friend bool operator==(const PermHom&, const PermHom&) = default;
};

struct InvariantOptions {
  std::size_t max_degree = 6;         // refuse coset counts above this
  std::size_t max_quotient = 200000;  // cap on [G : F']
};

// Every homomorphism G -> Sym(d) whose image has at most d elements.
// With up_to_conjugacy, the first generator's permutation is restricted to
// one representative per cycle type, which still yields every kernel.
std::vector<PermHom> enumerate_small_quotient_homs(const VFGroup& g, std::size_t d,
                                                   bool up_to_conjugacy = false);

// Image of an element under a permutation homomorphism.
Perm perm_image(const PermHom& h, std::size_t rank, const GElement& x);
// Order of the image group.
std::size_t image_size(const PermHom& h);

// F': the intersection of all normal subgroups of index <= m, where m is the
// coset count. It is free, of finite index, and invariant under every
// endomorphism.
class FullyInvariantSubgroup {
 public:
  // F' as a subgroup of F.
  const Automaton& automaton() const { return automaton_; }
  std::vector<Word> basis() const { return automaton_.basis(); }
  std::size_t rank() const { return automaton_.rank(); }
  // Representatives b'_i of G/F'; index 0 is the identity.
  const std::vector<GElement>& coset_reps() const { return reps_; }
  std::size_t index_in_g() const { return reps_.size(); }
  // Kernels that were intersected (one per distinct kernel found).
  const std::vector<PermHom>& homs() const { return homs_; }

  bool contains(const GElement& x) const { return coset_of(x) == 0; }
  // Index into coset_reps() of the coset F' x.
  std::uint32_t coset_of(const GElement& x) const;

 private:
  friend FullyInvariantSubgroup compute_fully_invariant(const VFGroup&, const InvariantOptions&);
  using Tuple = std::vector<std::uint8_t>;
  Tuple tuple_of(const GElement& x) const;

  std::size_t rank_ = 0;
  std::size_t degree_ = 0;
  std::vector<Tuple> gen_tuples_, gen_inverse_tuples_;
  Automaton automaton_;
  std::vector<GElement> reps_;
  std::vector<PermHom> homs_;
  std::map<Tuple, std::uint32_t> position_;
};

FullyInvariantSubgroup compute_fully_invariant(const VFGroup& g,
                                               const InvariantOptions& opts = {});

}  // namespace vfe
