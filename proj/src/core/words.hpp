#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vfe {

// A generator or its inverse. Generator ids index into an Alphabet that is
// carried separately, so the same word type serves every free group in play.
struct Letter {
  std::uint32_t gen = 0;
  bool inverse = false;

  constexpr Letter inverted() const { return Letter{gen, !inverse}; }
  constexpr int sign() const { return inverse ? -1 : 1; }

  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr auto operator<=>(Letter, Letter) = default;
};

constexpr Letter pos(std::uint32_t gen) { return Letter{gen, false}; }
constexpr Letter neg(std::uint32_t gen) { return Letter{gen, true}; }
constexpr bool cancels(Letter x, Letter y) {
  return x.gen == y.gen && x.inverse != y.inverse;
}

// Immutable freely reduced word. The empty word is the identity.
class Word {
 public:
  Word() = default;

  // Free reduction of an arbitrary letter sequence.
  static Word reduce(std::span<const Letter> raw);
  // Same, rejecting generator ids >= alphabet_size with DomainError.
  static Word reduce(std::span<const Letter> raw, std::size_t alphabet_size);
  static Word of(Letter x) { return Word(std::vector<Letter>{x}); }

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  // Largest generator id + 1 (0 for the identity).
  std::size_t span_of_generators() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.letters_ <=> b.letters_;
  }

 private:
  friend class WordBuilder;
  explicit Word(std::vector<Letter> reduced) : letters_(std::move(reduced)) {}
  std::vector<Letter> letters_;
};

// Accumulates letters with on-the-fly free reduction.
class WordBuilder {
 public:
  WordBuilder() = default;
  explicit WordBuilder(const Word& start) : buf_(start.letters_) {}

  void reserve(std::size_t n) { buf_.reserve(n); }
  void push(Letter x) {
    if (!buf_.empty() && cancels(buf_.back(), x))
      buf_.pop_back();
    else
      buf_.push_back(x);
  }
  void append(const Word& w) {
    for (Letter x : w) push(x);
  }
  void append_inverse(const Word& w) {
    for (auto it = w.letters_.rbegin(); it != w.letters_.rend(); ++it)
      push(it->inverted());
  }
  std::size_t size() const { return buf_.size(); }
  Word build() && { return Word(std::move(buf_)); }

 private:
  std::vector<Letter> buf_;
};

Word concat(const Word& w1, const Word& w2);
Word concat(std::initializer_list<Word> parts);
Word invert(const Word& w);
// w^k for any integer k.
Word power(const Word& w, long k);
// u^{-1} w u
Word conjugate(const Word& w, const Word& u);

struct CyclicReduction {
  Word core;
  Word conjugator;  // w = conjugator · core · conjugator⁻¹
};
CyclicReduction cyclic_reduce(const Word& w);

struct PrimitiveRoot {
  Word root;
  unsigned exponent = 1;  // w = root^exponent, root not a proper power
};
// Throws DomainError on the identity.
PrimitiveRoot primitive_root(const Word& w);

bool commute(const Word& w1, const Word& w2);

// Names for the generators of a free group. Names match [a-z][a-z0-9_]*.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);
  // x1, x2, ... used for alphabets that come out of basis computations.
  static Alphabet generic(std::size_t n, std::string_view prefix = "x");

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::uint32_t gen) const { return names_.at(gen); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::uint32_t> find(std::string_view name) const;

  // Surface syntax: whitespace-separated `name` / `name^-1`, `1` = identity.
  std::string format(const Word& w) const;
  std::string format(Letter x) const;
  Word parse(std::string_view text) const;
  Word parse_tokens(std::span<const std::string> tokens) const;
  bool covers(const Word& w) const { return w.span_of_generators() <= size(); }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

bool is_valid_name(std::string_view name);
std::vector<std::string> split_ws(std::string_view text);

}  // namespace vfe

template <>
struct std::hash<vfe::Word> {
  std::size_t operator()(const vfe::Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (vfe::Letter x : w) {
      h ^= (static_cast<std::size_t>(x.gen) << 1) | (x.inverse ? 1u : 0u);
      h *= 1099511628211ull;
    }
    return h;
  }
};
