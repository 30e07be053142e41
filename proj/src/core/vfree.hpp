#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "free_endo.hpp"
#include "stallings.hpp"
#include "words.hpp"

namespace vfe {

// G = F b_1 u ... u F b_m with b_1 = 1, relations b_i a = u_ia b_i and
// b_i b_j = v_ij b_{r_ij}. Coset indices are 0-based here: coset 0 is F.
struct Presentation {
  Alphabet free;
  std::vector<std::string> cosets{"1"};
  std::vector<std::vector<Word>> twist;               // [i][a] = u_ia
  std::vector<std::vector<Word>> product_word;        // [i][j] = v_ij
  std::vector<std::vector<std::uint32_t>> product_coset;  // [i][j] = r_ij

  std::size_t coset_count() const { return cosets.size(); }
  // The free group on `free` as the degenerate case m = 1.
  static Presentation free_group(Alphabet free);
  friend bool operator==(const Presentation&, const Presentation&) = default;
};

// Normal form f b_i.
struct GElement {
  Word word;
  std::uint32_t coset = 0;

  friend bool operator==(const GElement&, const GElement&) = default;
  friend auto operator<=>(const GElement& a, const GElement& b) {
    if (auto c = a.coset <=> b.coset; c != 0) return c;
    return a.word <=> b.word;
  }
};

// An endomorphism of G: images of the free generators and of the coset
// representatives b_2..b_m (coset_images[0] is the identity).
struct GEndo {
  std::vector<GElement> letter_images;
  std::vector<GElement> coset_images;
  friend bool operator==(const GEndo&, const GEndo&) = default;
};

// Empty result means the presentation is valid.
std::vector<std::string> validate(const Presentation& p);

// A presentation that passed validate(), with derived tables.
class VFGroup {
 public:
  // Throws InputError carrying the first diagnostic on invalid input.
  explicit VFGroup(Presentation p);

  const Presentation& presentation() const { return p_; }
  const Alphabet& free_alphabet() const { return p_.free; }
  std::size_t rank() const { return p_.free.size(); }
  std::size_t coset_count() const { return p_.coset_count(); }
  bool is_free() const { return coset_count() == 1; }
  // Conjugation twist a -> u_ia as an automorphism of F.
  const FreeEndo& twist(std::uint32_t i) const { return twists_[i]; }

  GElement identity() const { return {}; }
  GElement letter(Letter x) const { return {Word::of(x), 0}; }
  GElement coset_rep(std::uint32_t i) const { return {Word(), i}; }
  GElement mult(const GElement& g, const GElement& h) const;
  GElement inverse(const GElement& g) const;
  GElement power(const GElement& g, long k) const;

  std::string format(const GElement& g) const;
  // Word tokens followed by an optional coset name; throws InputError.
  GElement parse(const std::string& text) const;
  GElement parse_tokens(const std::vector<std::string>& tokens) const;
  std::optional<std::uint32_t> find_coset(const std::string& name) const;

  // Generators of G as elements: free letters, then b_2..b_m.
  std::vector<GElement> generators() const;

 private:
  Presentation p_;
  std::vector<FreeEndo> twists_;
  std::vector<std::uint32_t> inverse_coset_;  // j with r_ji = 0
};

GElement endo_apply(const VFGroup& g, const GEndo& phi, const GElement& x);
// phi applied k times.
GElement endo_apply_power(const VFGroup& g, const GEndo& phi, const GElement& x,
                          unsigned long k);
// Empty result means every defining relation is preserved.
std::vector<std::string> endo_check(const VFGroup& g, const GEndo& phi);
// Throws InputError unless phi is well formed and preserves the relations.
void require_endo(const VFGroup& g, const GEndo& phi);
GEndo identity_endo(const VFGroup& g);
// First phi, then psi.
GEndo compose(const VFGroup& g, const GEndo& phi, const GEndo& psi);
GEndo power(const VFGroup& g, const GEndo& phi, unsigned long k);
// True when every letter image lies in F, so F-words map by substitution.
bool preserves_free_part(const GEndo& phi);
// phi restricted to F (requires preserves_free_part).
FreeEndo free_part(const GEndo& phi, std::size_t rank);

struct Restriction {
  FreeEndo endo;            // over the basis alphabet of the subgroup
  std::vector<Word> basis;  // letter i of endo's alphabet stands for basis[i]
};
// phi restricted to the phi-invariant subgroup S <= F.
Restriction restrict_to_subgroup(const VFGroup& g, const GEndo& phi,
                                 const Automaton& s);

// The self-map on a finite set of cosets induced by phi: coset k goes to the
// coset containing phi(reps[k]). `locate` returns nullopt for elements it
// cannot place, which is reported as a broken invariance (DomainError).
std::vector<std::uint32_t> quotient_endo(
    const VFGroup& g, const GEndo& phi, const std::vector<GElement>& reps,
    const std::function<std::optional<std::uint32_t>(const GElement&)>& locate);
// Same, on the cosets of F itself.
std::vector<std::uint32_t> quotient_endo(const VFGroup& g, const GEndo& phi);

}  // namespace vfe

template <>
struct std::hash<vfe::GElement> {
  std::size_t operator()(const vfe::GElement& g) const noexcept {
    return std::hash<vfe::Word>{}(g.word) * 31 + g.coset;
  }
};
