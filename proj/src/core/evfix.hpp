#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fix.hpp"
#include "invariant.hpp"
#include "orbit.hpp"
#include "vfree.hpp"

namespace vfe {

enum class Verdict { Yes, No, Unknown };
std::string to_string(Verdict v);

bool in_evfix(const VFGroup& g, const GEndo& phi, const CPhiCertificate& c, const GElement& x);
bool in_evper(const VFGroup& g, const GEndo& phi, const CPhiCertificate& c, const GElement& x);

// Whether phi^c_phi (equivalently phi) has finite kernel: psi = phi|F' is
// injective iff its image has full rank.
bool kernel_finite(const VFGroup& g, const GEndo& phi, const FullyInvariantSubgroup& fi);

// The finite kernel of phi^c_phi; requires kernel_finite.
std::vector<GElement> finite_stable_kernel(const VFGroup& g, const GEndo& phi,
                                           const FullyInvariantSubgroup& fi);

struct EvFixOptions {
  FixOptions fix;
  bool trust_oracle = false;  // treat a bounded Fix as complete
};

struct EvFixReport {
  enum class Branch { WholeGroup, FiniteKernel, Index };
  Verdict verdict = Verdict::Unknown;
  Verdict leaning = Verdict::Unknown;  // the verdict if the bounded Fix is complete
  Branch branch = Branch::Index;
  bool kernel_finite = false;
  std::vector<GElement> kernel;        // FiniteKernel branch
  Index relative_index;                // [F'phi^c : Fix n F'phi^c], Index branch
  std::optional<std::size_t> index_in_f;  // [F' : EvFix n F'] when enumerated
  // An element of F' none of whose first few powers is eventually fixed,
  // which rules out finite index without relying on Fix.
  std::optional<GElement> power_witness;
  Completeness fix_complete;           // of the Fix n F' part the verdict used
  std::vector<GElement> generators;    // when YES
  Completeness generators_complete;    // FiniteKernel generators inherit Fix's flag
  std::size_t reduced_count = 0;       // size of a reduced generating set
  unsigned long power = 1;             // exponent e for the EvPer reduction
};

std::string to_string(EvFixReport::Branch b);

EvFixReport evfix_is_fg(const VFGroup& g, const GEndo& phi, const CPhiCertificate& c,
                        const FullyInvariantSubgroup& fi, const GFixResult& fix,
                        const EvFixOptions& opts = {});

// Computes the certificate and Fix itself.
EvFixReport evfix_is_fg(const VFGroup& g, const GEndo& phi, const FullyInvariantSubgroup& fi,
                        const EvFixOptions& opts = {});

// EvPer(phi) = EvFix(phi^e) for e a common multiple of all periods.
EvFixReport evper_is_fg(const VFGroup& g, const GEndo& phi, const FullyInvariantSubgroup& fi,
                        const EvFixOptions& opts = {});
unsigned long period_exponent(const VFGroup& g, const GEndo& phi,
                              const FullyInvariantSubgroup& fi);

enum class Normality { WholeGroup, KernelUnion, NotNormal, Unknown };
std::string to_string(Normality n);

struct NormalityReport {
  Normality verdict = Normality::Unknown;
  Normality leaning = Normality::Unknown;
  bool vanishing = false;  // conditions 1 and 2 both hold
  Completeness fix_complete;
};

// Free groups only.
NormalityReport normality_free(const FreeEndo& phi, const CPhiCertificate& c, const FixResult& fix,
                               bool trust_oracle = false);

std::size_t rank_bound(const FullyInvariantSubgroup& fi);

}  // namespace vfe
