#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "free_endo.hpp"
#include "invariant.hpp"
#include "stallings.hpp"
#include "vfree.hpp"

namespace vfe {

struct FixOptions {
  std::size_t length_bound = 12;
  // Work per call, counted as enumeration nodes plus image letters pushed;
  // when exhausted the search stops at the last fully enumerated length.
  std::size_t node_budget = 60'000'000;
};

// Completeness of a fixed-subgroup computation: CERTIFIED, or BOUNDED(n)
// meaning every fixed word of length <= n is in the subgroup.
struct Completeness {
  bool certified = false;
  std::size_t bound = 0;

  std::string str() const;
  // Weakest of the two.
  static Completeness meet(const Completeness& a, const Completeness& b);
  friend bool operator==(const Completeness&, const Completeness&) = default;
};

struct FixResult {
  Automaton subgroup;  // always contained in Fix(phi)
  Completeness complete;
};

// Subgroup generated by the fixed words of length <= opts.length_bound.
FixResult fix_free_bounded(const FreeEndo& phi, const FixOptions& opts = {});

// Exact Fix(phi) when the stable image of phi has rank <= 1 (every fixed
// point lies in the stable image); nullopt otherwise.
std::optional<Automaton> fix_from_stable_image(const FreeEndo& phi);

// X_u = {x : psi(x) = x u}: empty, or representative * Fix(psi).
struct SubgroupCoset {
  Automaton subgroup;
  Word representative;
  bool empty = false;
  Completeness complete;
};
SubgroupCoset x_u(const FreeEndo& psi, const Word& u, const FixOptions& opts = {});

struct CosetPiece {
  std::uint32_t coset = 0;   // index into the F' coset representatives
  bool in_f_prime = false;   // whether b' phi(b'^-1) lies in F'
  Word u;                    // that element in F'-basis coordinates
  bool empty = true;
  GElement representative;   // a fixed element of the coset when non-empty
  Completeness complete;
};

struct GFixResult {
  FixResult core;            // Fix(phi) n F' over the F'-basis alphabet
  std::vector<Word> basis;   // F'-basis, as words in F
  std::vector<CosetPiece> pieces;
  std::vector<GElement> generators;
  Completeness complete;
};

GFixResult fix_vfree(const VFGroup& g, const GEndo& phi, const FullyInvariantSubgroup& fi,
                     const FixOptions& opts = {});

}  // namespace vfe
