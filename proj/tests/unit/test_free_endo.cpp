#include <random>

#include "doctest.h"
#include "errors.hpp"
#include "free_endo.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace vfe;
using testing::free_endo;
using testing::W;

TEST_CASE("apply") {
  const FreeEndo aba = free_endo({"a b a", "1"});
  CHECK(aba.apply(W("a b a")) == W("a b a a b a"));
  CHECK(aba.apply(Word()).empty());
  CHECK(free_endo({"b a b^-1", "1"}).apply(W("a")) == W("b a b^-1"));
  CHECK_THROWS_AS(aba.apply(W("c")), DomainError);
  CHECK_THROWS_AS(free_endo({"c", "a"}), InputError);
}

TEST_CASE("compose and power") {
  const FreeEndo id = FreeEndo::identity(2);
  CHECK(power(id, 5) == id);
  const FreeEndo aba = free_endo({"a b a", "1"});
  const FreeEndo sq = power(aba, 2);
  CHECK(sq.image(0) == aba.apply(aba.apply(W("a"))));
  CHECK(sq.image(0) == W("a b a a b a"));
  CHECK(sq.image(1).empty());
  CHECK(compose(aba, id) == aba);
  CHECK(compose(id, aba) == aba);
  CHECK(power(aba, 0) == id);
}

TEST_CASE("length guard") {
  const FreeEndo dbl = free_endo({"a a", "b"});
  CHECK_THROWS_AS(power(dbl, 40), ResourceError);
  CHECK_NOTHROW(power(dbl, 10));
  CHECK_THROWS_AS(power(dbl, 10, 100), ResourceError);
}

TEST_CASE("image automata") {
  const Automaton im = image_automaton(free_endo({"a b a", "1"}), 1);
  CHECK(im.rank() == 1);
  CHECK(im.contains(W("a b a")));
  CHECK(image_automaton(FreeEndo::identity(2), 3).is_whole_group());
  CHECK(image_automaton(free_endo({"1", "1"}), 1).rank() == 0);
}

TEST_CASE("exponent sum") {
  CHECK(exponent_sum(W("a b a^-1 a"), 0) == 1);
  CHECK(exponent_sum(W("b"), 0) == 0);
  CHECK(exponent_sum(W("a a a"), 0) == 3);
}

namespace {

FreeEndo random_endo(std::mt19937& rng, std::size_t n, std::size_t len) {
  std::vector<Word> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(testing::random_word(rng, n, len));
  return FreeEndo(images);
}

std::vector<oracle::OWord> images_of(const FreeEndo& f) {
  std::vector<oracle::OWord> out;
  for (const Word& w : f.images()) out.push_back(oracle::from_word(w));
  return out;
}

}  // namespace

TEST_CASE("power agrees with iterated application") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 2;
    const FreeEndo f = random_endo(rng, n, 3);
    const Word w = testing::random_word(rng, n, 6);
    for (unsigned long k = 0; k <= 5; ++k) {
      oracle::OWord it = oracle::from_word(w);
      for (unsigned long i = 0; i < k; ++i) it = oracle::apply(images_of(f), it);
      REQUIRE(power(f, k).apply(w) == oracle::to_word(it));
    }
  }
}

TEST_CASE("apply is a homomorphism") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 2000; ++trial) {
    const FreeEndo f = random_endo(rng, 3, 4);
    const Word u = testing::random_word(rng, 3, 8), v = testing::random_word(rng, 3, 8);
    REQUIRE(f.apply(concat(u, v)) == concat(f.apply(u), f.apply(v)));
  }
}

TEST_CASE("images decrease along powers") {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 2;
    const FreeEndo f = random_endo(rng, n, 3);
    for (unsigned long k = 1; k <= 3; ++k) {
      const Automaton big = image_automaton(f, k), small = image_automaton(f, k + 1);
      CHECK(is_subgroup(small, big));
    }
  }
}
