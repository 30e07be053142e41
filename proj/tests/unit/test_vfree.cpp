#include <random>

#include "doctest.h"
#include "errors.hpp"
#include "helpers.hpp"
#include "oracles.hpp"
#include "vfree.hpp"

using namespace vfe;

namespace {

oracle::Dihedral as_dihedral(const GElement& g) {
  return {exponent_sum(g.word, 0), static_cast<int>(g.coset)};
}

GElement random_element(std::mt19937& rng, const VFGroup& g, std::size_t len) {
  return {testing::random_word(rng, g.rank(), len),
          static_cast<std::uint32_t>(rng() % g.coset_count())};
}

Presentation dinf_presentation() { return testing::fixture("dinf.grp").group().presentation(); }

}  // namespace

TEST_CASE("dihedral multiplication matches string rewriting") {
  const auto doc = testing::fixture("dinf.grp");
  const VFGroup& g = doc.group();
  const GElement xt = g.parse("x t");
  CHECK(g.mult(xt, xt) == g.identity());
  CHECK(g.inverse(xt) == xt);
  std::mt19937 rng(53);
  for (int i = 0; i < 5000; ++i) {
    const GElement u = random_element(rng, g, 5), v = random_element(rng, g, 5);
    CHECK(as_dihedral(g.mult(u, v)) == oracle::dihedral_mul(as_dihedral(u), as_dihedral(v)));
    CHECK(oracle::dihedral_mul(as_dihedral(g.inverse(u)), as_dihedral(u)) == oracle::Dihedral{});
  }
}

TEST_CASE("group laws on random elements") {
  for (const char* file : {"dinf.grp", "zz2.grp", "f2_corpus.grp"}) {
    const auto doc = testing::fixture(file);
    const VFGroup& g = doc.group();
    std::mt19937 rng(59);
    for (int i = 0; i < 10000; ++i) {
      const GElement x = random_element(rng, g, 4), y = random_element(rng, g, 4),
                     z = random_element(rng, g, 4);
      REQUIRE(g.mult(g.mult(x, y), z) == g.mult(x, g.mult(y, z)));
      REQUIRE(g.mult(g.identity(), x) == x);
      REQUIRE(g.mult(x, g.identity()) == x);
      REQUIRE(g.mult(x, g.inverse(x)) == g.identity());
      REQUIRE(g.inverse(g.inverse(x)) == x);
    }
  }
}

TEST_CASE("inverse in the free coset") {
  const auto doc = testing::fixture("dinf.grp");
  const VFGroup& g = doc.group();
  CHECK(g.inverse(g.identity()) == g.identity());
  CHECK(g.inverse(g.parse("x x")) == g.parse("x^-1 x^-1"));
}

TEST_CASE("validate") {
  CHECK(validate(dinf_presentation()).empty());
  CHECK(validate(Presentation::free_group(Alphabet({"a", "b"}))).empty());

  Presentation bad = dinf_presentation();
  bad.product_coset[1][1] = 7;
  auto diag = validate(bad);
  REQUIRE_FALSE(diag.empty());
  CHECK(diag.front().find("coset index") != std::string::npos);

  Presentation noninv = dinf_presentation();
  noninv.twist[1][0] = concat(Word::of(pos(0)), Word::of(pos(0)));
  diag = validate(noninv);
  REQUIRE_FALSE(diag.empty());
  CHECK(diag.front().find("automorphism") != std::string::npos);

  // t t = x clashes with t inverting x.
  Presentation assoc = dinf_presentation();
  assoc.product_word[1][1] = Word::of(pos(0));
  diag = validate(assoc);
  REQUIRE_FALSE(diag.empty());
  CHECK(diag.front().find("associativity") != std::string::npos);

  CHECK_THROWS_AS((void)VFGroup(bad), InputError);
}

TEST_CASE("endo_apply") {
  const auto doc = testing::fixture("dinf.grp");
  const VFGroup& g = doc.group();
  const GElement t = g.coset_rep(1);
  CHECK(endo_apply(g, doc.endo("id"), g.parse("x x t")) == g.parse("x x t"));
  CHECK(endo_apply(g, doc.endo("xt"), t) == g.parse("x t"));

  const auto f2 = testing::fixture("f2_aba.grp");
  const GEndo& phi = f2.endo("phi");
  const FreeEndo fphi = free_part(phi, 2);
  std::mt19937 rng(61);
  for (int i = 0; i < 500; ++i) {
    const Word w = testing::random_word(rng, 2, 6);
    CHECK(endo_apply(f2.group(), phi, GElement{w, 0}).word == fphi.apply(w));
  }
}

TEST_CASE("endo_apply agrees with the dihedral oracle and is a homomorphism") {
  const auto doc = testing::fixture("dinf.grp");
  const VFGroup& g = doc.group();
  std::mt19937 rng(67);
  for (const auto& e : doc.endos()) {
    const auto xi = as_dihedral(e.endo.letter_images[0]);
    const auto ti = as_dihedral(e.endo.coset_images[1]);
    for (int i = 0; i < 500; ++i) {
      const GElement u = random_element(rng, g, 5), v = random_element(rng, g, 5);
      CHECK(as_dihedral(endo_apply(g, e.endo, u)) == oracle::dihedral_apply(xi, ti, as_dihedral(u)));
      CHECK(endo_apply(g, e.endo, g.mult(u, v)) ==
            g.mult(endo_apply(g, e.endo, u), endo_apply(g, e.endo, v)));
    }
  }
  const auto zz = testing::fixture("zz2.grp");
  for (const auto& e : zz.endos())
    for (int i = 0; i < 500; ++i) {
      const GElement u = random_element(rng, zz.group(), 5), v = random_element(rng, zz.group(), 5);
      CHECK(endo_apply(zz.group(), e.endo, zz.group().mult(u, v)) ==
            zz.group().mult(endo_apply(zz.group(), e.endo, u), endo_apply(zz.group(), e.endo, v)));
    }
}

TEST_CASE("endo_check") {
  const auto doc = testing::fixture("dinf.grp");
  const VFGroup& g = doc.group();
  CHECK(endo_check(g, identity_endo(g)).empty());
  GEndo bad{{g.parse("x")}, {g.identity(), g.identity()}};
  auto diag = endo_check(g, bad);
  REQUIRE_FALSE(diag.empty());
  CHECK(diag.front().find("relation t x") != std::string::npos);
  GEndo vanish{{g.identity()}, {g.identity(), g.coset_rep(1)}};
  CHECK(endo_check(g, vanish).empty());
  GEndo wrong_size{{}, {g.identity(), g.coset_rep(1)}};
  CHECK_FALSE(endo_check(g, wrong_size).empty());
}

TEST_CASE("compose and power of group endomorphisms") {
  const auto doc = testing::fixture("dinf.grp");
  const VFGroup& g = doc.group();
  std::mt19937 rng(71);
  for (const auto& e : doc.endos()) {
    const GEndo p3 = power(g, e.endo, 3);
    for (int i = 0; i < 100; ++i) {
      const GElement u = random_element(rng, g, 5);
      CHECK(endo_apply(g, p3, u) == endo_apply_power(g, e.endo, u, 3));
    }
  }
}

TEST_CASE("restrict_to_subgroup") {
  const auto doc = testing::fixture("f2_aba.grp");
  const VFGroup& g = doc.group();
  const GEndo& phi = doc.endo("phi");
  const Restriction whole = restrict_to_subgroup(g, phi, Automaton::whole_group(2));
  CHECK(whole.endo == free_part(phi, 2));

  const auto f2 = testing::fixture("identity.grp");
  GEndo sq{{f2.group().parse("a"), f2.group().parse("b b")}, {GElement{}}};
  const Automaton s = Automaton::from_generators(testing::Ws({"a a", "b", "a b a^-1"}), 2);
  const Restriction r = restrict_to_subgroup(f2.group(), sq, s);
  CHECK(r.endo.alphabet_size() == 3);
  for (std::uint32_t i = 0; i < 3; ++i)
    CHECK(evaluate(r.endo.image(i), r.basis) == free_part(sq, 2).apply(r.basis[i]));

  const Automaton not_inv = Automaton::from_generators(testing::Ws({"a"}), 2);
  GEndo swap{{f2.group().parse("b"), f2.group().parse("a")}, {GElement{}}};
  CHECK_THROWS_AS(restrict_to_subgroup(f2.group(), swap, not_inv), DomainError);
}

TEST_CASE("quotient_endo on the cosets of F") {
  const auto doc = testing::fixture("dinf.grp");
  const VFGroup& g = doc.group();
  CHECK(quotient_endo(g, doc.endo("id")) == std::vector<std::uint32_t>{0, 1});
  CHECK(quotient_endo(g, doc.endo("xt")) == std::vector<std::uint32_t>{0, 1});
  CHECK(quotient_endo(g, doc.endo("trivial")) == std::vector<std::uint32_t>{0, 0});
}

TEST_CASE("element syntax") {
  const auto doc = testing::fixture("dinf.grp");
  const VFGroup& g = doc.group();
  CHECK(g.parse("1") == g.identity());
  CHECK(g.parse("t") == g.coset_rep(1));
  CHECK(g.parse("x x^-1 t") == g.coset_rep(1));
  CHECK(g.parse("x 1") == g.parse("x"));
  CHECK(g.format(g.parse("x x t")) == "x x t");
  CHECK(g.format(g.identity()) == "1");
  CHECK(g.format(g.coset_rep(1)) == "t");
  CHECK_THROWS_AS(g.parse("y"), InputError);
}
