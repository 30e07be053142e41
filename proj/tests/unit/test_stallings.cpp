#include <algorithm>
#include <random>

#include "doctest.h"
#include "errors.hpp"
#include "helpers.hpp"
#include "oracles.hpp"
#include "stallings.hpp"

using namespace vfe;
using testing::W;
using testing::Ws;

namespace {

Automaton aut(std::initializer_list<const char*> gens, std::size_t n = 2) {
  return Automaton::from_generators(Ws(gens), n);
}

std::vector<oracle::OWord> to_o(const std::vector<Word>& ws) {
  std::vector<oracle::OWord> out;
  for (const Word& w : ws) out.push_back(oracle::from_word(w));
  return out;
}

}  // namespace

TEST_CASE("from_generators and contains") {
  const Automaton h = aut({"a a", "b"});
  CHECK(h.vertex_count() == 2);
  CHECK(h.contains(W("a a")));
  CHECK_FALSE(h.contains(W("a")));
  CHECK_FALSE(h.contains(W("a b")));
  CHECK(h.contains(Word()));

  const Automaton triv = Automaton::from_generators({}, 2);
  CHECK(triv.vertex_count() == 1);
  CHECK(triv.is_trivial());
  CHECK(triv.rank() == 0);

  const Automaton rose = aut({"a", "b"});
  CHECK(rose.vertex_count() == 1);
  CHECK(rose.is_whole_group());
  CHECK(rose == Automaton::whole_group(2));

  CHECK(aut({"b a b^-1"}).contains(W("b a a a b^-1")));
}

TEST_CASE("membership matches brute force on the a^2, b example") {
  const Automaton h = aut({"a a", "b"});
  const auto ball = oracle::subgroup_ball(to_o(Ws({"a a", "b"})), {6, 2});
  for (const auto& o : oracle::all_words(2, 6))
    CHECK(h.contains(oracle::to_word(o)) == (ball.count(o) > 0));
}

TEST_CASE("rank and basis") {
  CHECK(aut({"a a", "b"}).rank() == 2);
  CHECK(Automaton::whole_group(2).rank() == 2);
  const Automaton h = aut({"a a", "a b"});
  const auto basis = h.basis();
  CHECK(basis.size() == 2);
  CHECK(Automaton::from_generators(basis, 2) == h);
  CHECK(Automaton(2).basis().empty());
  const auto rb = Automaton::whole_group(2).basis();
  CHECK(Automaton::from_generators(rb, 2).is_whole_group());
}

TEST_CASE("index and coset representatives") {
  const Automaton h = aut({"a a", "b", "a b a^-1"});
  REQUIRE(h.index().has_value());
  CHECK(*h.index() == 2);
  const auto reps = h.coset_reps();
  CHECK(reps[0].empty());
  CHECK_FALSE(h.contains(concat(reps[1], invert(reps[0]))));

  const Automaton rose = Automaton::whole_group(2);
  CHECK(rose.index() == std::optional<std::size_t>(1));
  CHECK(rose.coset_reps() == std::vector<Word>{Word()});

  CHECK(aut({"a"}).index() == kInfinite);
  CHECK_THROWS_AS(aut({"a"}).coset_reps(), DomainError);
}

TEST_CASE("intersection") {
  CHECK(intersect(aut({"a"}), aut({"b"})).is_trivial());
  const Automaton h = aut({"a b a^-1", "b b a"});
  CHECK(intersect(h, h) == h);
  const Automaton x = intersect(aut({"a a", "b"}), aut({"a a a", "b"}));
  CHECK(x.contains(W("a a a a a a")));
  CHECK(x.contains(W("b")));
  CHECK_FALSE(x.contains(W("a a")));

  const auto g1 = to_o(Ws({"a a", "b"})), g2 = to_o(Ws({"a a a", "b"}));
  const auto b1 = oracle::subgroup_ball(g1, {8, 2}), b2 = oracle::subgroup_ball(g2, {8, 2});
  for (const auto& o : oracle::all_words(2, 8))
    CHECK(x.contains(oracle::to_word(o)) == (b1.count(o) && b2.count(o)));
}

TEST_CASE("rewrite_in_basis") {
  const Automaton k = aut({"a a", "b"});
  const auto basis = k.basis();
  const Word w = W("a a b");
  const Word coords = k.rewrite_in_basis(w);
  CHECK(evaluate(coords, basis) == w);
  CHECK(coords.size() == 2);
  CHECK(k.rewrite_in_basis(Word()).empty());
  CHECK_THROWS_AS(k.rewrite_in_basis(W("a")), DomainError);
  const Automaton rose = Automaton::whole_group(2);
  CHECK(rose.rewrite_in_basis(W("a b")) == W("a b"));
}

TEST_CASE("relative index") {
  const Automaton h = aut({"a b", "b a a"});
  CHECK(relative_index(h, h) == std::optional<std::size_t>(1));
  CHECK(relative_index(aut({"a a"}), aut({"a"})) == std::optional<std::size_t>(2));
  CHECK(relative_index(aut({"b a b^-1"}), aut({"b a b^-1", "b b"})) == kInfinite);
  CHECK_THROWS_AS(relative_index(aut({"a"}), aut({"b"})), DomainError);
}

TEST_CASE("relative index agrees with a completeness check in coordinates") {
  // H = <bab^-1> in K = <bab^-1, b^2>: in K's free coordinates H is the
  // cyclic subgroup generated by one basis letter, so every coset of the
  // other letter is distinct.
  const Automaton k = aut({"b a b^-1", "b b"});
  const Automaton h = aut({"b a b^-1"});
  for (long e = 1; e <= 5; ++e) {
    const Word y = power(W("b b"), e);
    CHECK_FALSE(h.contains(y));
  }
}

TEST_CASE("debug dump") {
  const Automaton h = aut({"a a", "b"});
  CHECK(h.dump(&testing::abc()) == "base 0\n0 --a--> 1\n0 --b--> 0\n1 --a--> 0\n");
  CHECK(Automaton(2).dump() == "base 0\n");
}

TEST_CASE("tracked folding expresses members in the generators") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<Word> gens;
    const std::size_t k = 1 + rng() % 4;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(testing::random_word(rng, 3, 6));
    const TrackedAutomaton t(gens, 3);
    CHECK(t.automaton() == Automaton::from_generators(gens, 3));
    for (int s = 0; s < 20; ++s) {
      Word w;
      for (int f = 0; f < 4; ++f) {
        const Word& g = gens[rng() % k];
        w = concat(w, rng() % 2 ? g : invert(g));
      }
      const Word expr = t.express(w);
      CHECK(evaluate(expr, gens) == w);
    }
  }
  const TrackedAutomaton t(Ws({"a a"}), 2);
  CHECK_THROWS_AS(t.express(W("a")), DomainError);
}

TEST_CASE("membership agrees with brute-force subgroup enumeration") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 2;
    std::vector<Word> gens;
    const std::size_t k = 1 + rng() % 4;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(testing::random_word(rng, n, 6));
    const Automaton h = Automaton::from_generators(gens, n);
    const std::size_t len = n == 2 ? 8 : 7;
    const auto ball = oracle::subgroup_ball(to_o(gens), {len, n});
    for (const auto& o : oracle::all_words(n, len)) {
      const bool in = h.contains(oracle::to_word(o));
      if (in != (ball.count(o) > 0)) {
        INFO("generators: ", gens.size(), " word length ", o.size());
        CHECK(in == (ball.count(o) > 0));
      }
    }
  }
}

TEST_CASE("folding is independent of generator order") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Word> gens;
    const std::size_t k = 1 + rng() % 4;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(testing::random_word(rng, 3, 6));
    const Automaton ref = Automaton::from_generators(gens, 3);
    for (int s = 0; s < 5; ++s) {
      std::shuffle(gens.begin(), gens.end(), rng);
      if (rng() % 2) gens[0] = invert(gens[0]);
      CHECK(Automaton::from_generators(gens, 3) == ref);
    }
    // Edge insertion order: feed the automaton's own edges shuffled.
    auto edges = ref.edges();
    std::shuffle(edges.begin(), edges.end(), rng);
    CHECK(Automaton::from_edges(ref.vertex_count(), 0, edges, 3) == ref);
  }
}

TEST_CASE("Schreier index formula on complete automata") {
  std::mt19937 rng(31);
  int checked = 0;
  while (checked < 60) {
    const std::size_t r = 2 + rng() % 2;
    const std::size_t d = 1 + rng() % 6;
    // Random permutation action of F_r on d points: a complete automaton.
    std::vector<Edge> edges;
    for (std::uint32_t g = 0; g < r; ++g) {
      std::vector<std::uint32_t> perm(d);
      for (std::uint32_t i = 0; i < d; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::uint32_t i = 0; i < d; ++i) edges.push_back({i, g, perm[i]});
    }
    const Automaton h = Automaton::from_edges(d, 0, edges, r);
    REQUIRE(h.index().has_value());
    const std::size_t index = *h.index();
    CHECK(h.rank() - 1 == index * (r - 1));
    CHECK(Automaton::from_generators(h.basis(), r) == h);
    ++checked;
  }
}

TEST_CASE("intersection is commutative and monotone") {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Word> g1, g2;
    for (std::size_t i = 0; i < 1 + rng() % 3; ++i) g1.push_back(testing::random_word(rng, 2, 5));
    for (std::size_t i = 0; i < 1 + rng() % 3; ++i) g2.push_back(testing::random_word(rng, 2, 5));
    const Automaton a = Automaton::from_generators(g1, 2), b = Automaton::from_generators(g2, 2);
    const Automaton x = intersect(a, b);
    CHECK(x == intersect(b, a));
    CHECK(is_subgroup(x, a));
    CHECK(is_subgroup(x, b));
  }
}
