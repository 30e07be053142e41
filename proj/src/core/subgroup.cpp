#include "subgroup.hpp"

#include "errors.hpp"

namespace vfe {

// Schreier generators of the stabiliser of the coset F' under the right
// action of H on G/F'.
VSubgroup::VSubgroup(const VFGroup& g, const FullyInvariantSubgroup& fi,
                     std::vector<GElement> generators)
    : g_(&g), fi_(&fi), slot_(fi.index_in_g(), -1) {
  cosets_.push_back(0);
  reps_.push_back(g.identity());
  slot_[0] = 0;
  std::vector<Word> schreier;
  for (std::size_t head = 0; head < cosets_.size(); ++head) {
    const GElement rep = reps_[head];
    for (const GElement& s : generators) {
      const GElement next = g.mult(rep, s);
      const std::uint32_t q = fi.coset_of(next);
      if (slot_[q] < 0) {
        slot_[q] = static_cast<std::int64_t>(cosets_.size());
        cosets_.push_back(q);
        reps_.push_back(next);
        continue;
      }
      const GElement h = g.mult(next, g.inverse(reps_[slot_[q]]));
      if (h.coset != 0) throw Error("internal: Schreier generator outside F");
      if (!h.word.empty()) schreier.push_back(h.word);
    }
  }
  free_part_ = Automaton::from_generators(schreier, g.rank());
}

bool VSubgroup::contains(const GElement& x) const {
  const std::int64_t s = slot_[fi_->coset_of(x)];
  if (s < 0) return false;
  const GElement h = g_->mult(x, g_->inverse(reps_[s]));
  return h.coset == 0 && free_part_.contains(h.word);
}

std::vector<GElement> VSubgroup::reduced_generators() const {
  std::vector<GElement> out;
  for (const Word& w : free_part_.basis()) out.push_back(GElement{w, 0});
  for (std::size_t i = 1; i < reps_.size(); ++i) out.push_back(reps_[i]);
  return out;
}

}  // namespace vfe
