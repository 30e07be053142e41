#include "doctest.h"
#include "errors.hpp"
#include "report.hpp"

using namespace vfe;

TEST_CASE("report rendering") {
  Report r;
  r.add("verdict", "YES");
  r.add("kernel_finite", false);
  r.add("c_phi", std::size_t{7});
  r.add_list("generator", {"a", "b a b^-1"});
  CHECK(r.text() ==
        "verdict: YES\nkernel_finite: no\nc_phi: 7\ngenerator.count: 2\ngenerator.0: a\n"
        "generator.1: b a b^-1\n");
  CHECK(r.structured() ==
        "verdict=YES\nkernel_finite=no\nc_phi=7\ngenerator.count=2\ngenerator.0=a\n"
        "generator.1=b a b^-1\n");
  REQUIRE(r.find("generator.1"));
  CHECK(*r.find("generator.1") == "b a b^-1");
  CHECK(r.find("generator.2") == nullptr);
}

TEST_CASE("report keys stay parseable") {
  Report r;
  CHECK_THROWS(r.add("two words", "x"));
  CHECK_THROWS(r.add("a=b", "x"));
  CHECK_THROWS(r.add("a:b", "x"));
  CHECK_THROWS(r.add("", "x"));
  CHECK_THROWS(r.add("k", "line\nbreak"));
  r.add("k", "x = y: z");
  CHECK(r.structured() == "k=x = y: z\n");
}
