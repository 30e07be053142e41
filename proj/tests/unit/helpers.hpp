#pragma once

#include <random>
#include <string>
#include <vector>

#include "words.hpp"

namespace testing {

inline const vfe::Alphabet& abc() {
  static const vfe::Alphabet a({"a", "b", "c"});
  return a;
}

// Parses over {a, b, c}.
inline vfe::Word W(const std::string& s) { return abc().parse(s); }

inline std::vector<vfe::Word> Ws(std::initializer_list<const char*> items) {
  std::vector<vfe::Word> out;
  for (const char* s : items) out.push_back(W(s));
  return out;
}

inline vfe::Word random_word(std::mt19937& rng, std::size_t k, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::uint32_t> gen(0, static_cast<std::uint32_t>(k - 1));
  std::bernoulli_distribution sign(0.5);
  std::vector<vfe::Letter> raw(len(rng));
  for (auto& x : raw) x = vfe::Letter{gen(rng), sign(rng)};
  return vfe::Word::reduce(raw);
}

}  // namespace testing

#include "io.hpp"

namespace testing {

inline vfe::Document fixture(const std::string& name) {
  return vfe::Document::from_file(std::string(VFE_FIXTURE_DIR) + "/" + name);
}

inline vfe::FreeEndo free_endo(std::initializer_list<const char*> images) {
  std::vector<vfe::Word> ws;
  for (const char* s : images) ws.push_back(W(s));
  return vfe::FreeEndo(std::move(ws));
}

}  // namespace testing

#include <set>

namespace testing {

// Elements of G spelled by words of length <= n in the letters, their
// inverses and the coset representatives.
inline std::set<vfe::GElement> ball(const vfe::VFGroup& g, std::size_t n) {
  std::vector<vfe::GElement> steps;
  for (const auto& x : g.generators()) {
    steps.push_back(x);
    steps.push_back(g.inverse(x));
  }
  std::set<vfe::GElement> seen{g.identity()};
  std::vector<vfe::GElement> frontier{g.identity()};
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<vfe::GElement> next;
    for (const auto& e : frontier)
      for (const auto& s : steps)
        if (auto m = g.mult(e, s); seen.insert(m).second) next.push_back(m);
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace testing
