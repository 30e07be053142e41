#pragma once

#include <cstddef>
#include <vector>

#include "stallings.hpp"
#include "words.hpp"

namespace vfe {

inline constexpr std::size_t kDefaultMaxLetters = 1'000'000;

// Endomorphism of a free group given by the images of its generators.
class FreeEndo {
 public:
  FreeEndo() = default;
  // images[g] is the image of generator g; all images must lie in the same
  // free group (InputError otherwise).
  explicit FreeEndo(std::vector<Word> images);
  static FreeEndo identity(std::size_t n);

  std::size_t alphabet_size() const { return images_.size(); }
  const std::vector<Word>& images() const { return images_; }
  const Word& image(std::uint32_t gen) const { return images_.at(gen); }
  std::size_t total_length() const;
  bool is_identity() const;

  // Throws ResourceError if the result would exceed max_letters.
  Word apply(const Word& w, std::size_t max_letters = kDefaultMaxLetters) const;

  friend bool operator==(const FreeEndo&, const FreeEndo&) = default;

 private:
  std::vector<Word> images_;
};

// First phi, then psi: apply(compose(phi, psi), w) = psi(phi(w)).
FreeEndo compose(const FreeEndo& phi, const FreeEndo& psi,
                 std::size_t max_letters = kDefaultMaxLetters);
// phi^k by repeated squaring; power(phi, 0) is the identity.
FreeEndo power(const FreeEndo& phi, unsigned long k,
               std::size_t max_letters = kDefaultMaxLetters);
// Automaton of Im(phi^k) = <images of the generators under phi^k>.
Automaton image_automaton(const FreeEndo& phi, unsigned long k,
                          std::size_t max_letters = kDefaultMaxLetters);
long exponent_sum(const Word& w, std::uint32_t gen);

// Im(phi^j) for the least j >= 1 with rank Im(phi^(j+1)) = rank Im(phi^j).
// From there on phi is injective on the image, so the rank never drops again.
struct StableImage {
  Automaton image;
  unsigned long power = 1;
};
StableImage stable_image(const FreeEndo& phi, std::size_t max_letters = kDefaultMaxLetters);

}  // namespace vfe
