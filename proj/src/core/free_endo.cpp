#include "free_endo.hpp"

#include <string>

#include "errors.hpp"

namespace vfe {

FreeEndo::FreeEndo(std::vector<Word> images) : images_(std::move(images)) {
  for (const Word& w : images_)
    if (w.span_of_generators() > images_.size())
      throw InputError("endomorphism image uses a generator outside the alphabet");
}

FreeEndo FreeEndo::identity(std::size_t n) {
  std::vector<Word> images;
  for (std::uint32_t g = 0; g < n; ++g) images.push_back(Word::of(pos(g)));
  return FreeEndo(std::move(images));
}

std::size_t FreeEndo::total_length() const {
  std::size_t n = 0;
  for (const Word& w : images_) n += w.size();
  return n;
}

bool FreeEndo::is_identity() const { return *this == identity(images_.size()); }

Word FreeEndo::apply(const Word& w, std::size_t max_letters) const {
  WordBuilder b;
  for (Letter x : w) {
    if (x.gen >= images_.size())
      throw DomainError("letter outside the endomorphism's alphabet");
    if (x.inverse)
      b.append_inverse(images_[x.gen]);
    else
      b.append(images_[x.gen]);
    if (b.size() > max_letters)
      throw ResourceError("image word exceeds " + std::to_string(max_letters) + " letters");
  }
  return std::move(b).build();
}

FreeEndo compose(const FreeEndo& phi, const FreeEndo& psi, std::size_t max_letters) {
  if (phi.alphabet_size() != psi.alphabet_size())
    throw DomainError("composition of endomorphisms over different alphabets");
  std::vector<Word> images;
  std::size_t total = 0;
  for (const Word& w : phi.images()) {
    images.push_back(psi.apply(w, max_letters));
    total += images.back().size();
    if (total > max_letters)
      throw ResourceError("endomorphism exceeds " + std::to_string(max_letters) + " letters");
  }
  return FreeEndo(std::move(images));
}

FreeEndo power(const FreeEndo& phi, unsigned long k, std::size_t max_letters) {
  FreeEndo result = FreeEndo::identity(phi.alphabet_size());
  FreeEndo square = phi;  // phi^(2^i)
  while (k > 0) {
    if (k & 1) result = compose(result, square, max_letters);
    k >>= 1;
    if (k > 0) square = compose(square, square, max_letters);
  }
  return result;
}

Automaton image_automaton(const FreeEndo& phi, unsigned long k, std::size_t max_letters) {
  const FreeEndo p = power(phi, k, max_letters);
  return Automaton::from_generators(p.images(), phi.alphabet_size());
}

StableImage stable_image(const FreeEndo& phi, std::size_t max_letters) {
  const std::size_t n = phi.alphabet_size();
  auto advance = [&](const Automaton& a) {
    std::vector<Word> gens;
    for (const Word& w : a.basis()) gens.push_back(phi.apply(w, max_letters));
    return Automaton::from_generators(gens, n);
  };
  StableImage s{advance(Automaton::whole_group(n)), 1};
  if (s.image.rank() == n) return s;  // injective: free groups are Hopfian
  for (Automaton next = advance(s.image); next.rank() != s.image.rank(); next = advance(s.image)) {
    s.image = std::move(next);
    ++s.power;
  }
  return s;
}

long exponent_sum(const Word& w, std::uint32_t gen) {
  long s = 0;
  for (Letter x : w)
    if (x.gen == gen) s += x.sign();
  return s;
}

}  // namespace vfe
