#pragma once

#include <cstdint>
#include <vector>

#include "invariant.hpp"
#include "stallings.hpp"
#include "vfree.hpp"

namespace vfe {

// Finitely generated subgroup H of G, stored as H n F' (a free subgroup of F)
// together with one representative per F'-coset that H meets.
class VSubgroup {
 public:
  VSubgroup(const VFGroup& g, const FullyInvariantSubgroup& fi, std::vector<GElement> generators);

  bool contains(const GElement& x) const;
  // Generators of H n F' as words in F.
  const Automaton& free_part() const { return free_part_; }
  // F'-cosets met by H, with a representative in H for each.
  const std::vector<std::uint32_t>& cosets() const { return cosets_; }
  const std::vector<GElement>& coset_reps() const { return reps_; }
  // A generating set: a basis of H n F' followed by reps of nontrivial cosets.
  std::vector<GElement> reduced_generators() const;
  bool is_trivial() const { return free_part_.is_trivial() && cosets_.size() == 1; }

 private:
  const VFGroup* g_;
  const FullyInvariantSubgroup* fi_;
  Automaton free_part_;
  std::vector<std::uint32_t> cosets_;
  std::vector<GElement> reps_;
  std::vector<std::int64_t> slot_;  // coset of F' -> position in cosets_, or -1
};

}  // namespace vfe
