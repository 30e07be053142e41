#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "invariant.hpp"
#include "vfree.hpp"

namespace vfe {

struct OrbitReport {
  enum class Status { Finite, Exceeded };
  std::vector<GElement> elements;
  std::size_t preperiod = 0;
  std::size_t period = 0;
  Status status = Status::Finite;
  std::size_t cap = 0;

  bool finite() const { return status == Status::Finite; }
};

// Iterates phi from g until an element repeats or cap + 1 distinct elements
// have been seen.
OrbitReport orbit(const VFGroup& g, const GEndo& phi, const GElement& x, std::size_t cap);

// Largest order of a finite-order element of Aut(F_n).
std::uint64_t aut_order_bound(std::size_t n);
// lcm of every order m that passes the same test: a multiple of every
// period of every endomorphism of F_n.
std::uint64_t aut_order_lcm(std::size_t n);

struct CosetPeriod {
  std::uint32_t coset = 0;                 // F'-coset index
  std::vector<std::uint32_t> theta_orbit;  // coset, theta(coset), ...
  std::optional<std::size_t> period;       // nullopt when not theta-periodic
  std::uint64_t bound = 0;                 // C * period, or 0
};

struct PeriodBound {
  std::uint64_t aut_bound = 0;  // C for rank(F') + 1
  std::uint64_t bound = 0;
  std::vector<CosetPeriod> cosets;
};

PeriodBound period_bound(const VFGroup& g, const GEndo& phi, const FullyInvariantSubgroup& fi);

struct StraightStep {
  std::size_t j = 0;
  std::size_t rank = 0;       // rank Im(psi^j)
  std::size_t next_rank = 0;  // rank Im(psi^(j+1))
  std::size_t index = 0;      // [G phi^j : F' phi^j]
  std::size_t next_index = 0;
};

struct StraightBound {
  std::uint64_t bound = 0;
  std::vector<StraightStep> steps;
  bool vanishing = false;
  std::size_t largest_orbit = 0;  // M in the vanishing case
};

StraightBound straight_bound(const VFGroup& g, const GEndo& phi, const FullyInvariantSubgroup& fi);

struct CPhiCertificate {
  PeriodBound period;
  StraightBound straight;
  std::uint64_t c_phi = 0;
};

CPhiCertificate c_phi(const VFGroup& g, const GEndo& phi, const FullyInvariantSubgroup& fi);

struct FiniteOrder {
  bool finite = false;
  std::size_t preperiod = 0;  // phi^p = phi^(p+m)
  std::size_t period = 0;
};

FiniteOrder is_finite_order(const VFGroup& g, const GEndo& phi, const CPhiCertificate& c);

// Least m with phi^m = phi^(m+1), if any.
std::optional<std::size_t> stabilizes(const VFGroup& g, const GEndo& phi, const CPhiCertificate& c);

bool in_stable_kernel(const VFGroup& g, const GEndo& phi, const CPhiCertificate& c,
                      const GElement& x);

}  // namespace vfe
