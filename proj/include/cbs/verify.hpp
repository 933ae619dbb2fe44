#pragma once

#include "cbs/bistatic.hpp"
#include "cbs/tensors.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace cbs {

/// Ladder polarization kernel evaluated the hard way: squared two-atom
/// amplitudes summed over every sublevel assignment of both atoms, with
/// the uniform internal distribution. Oracle for ladder_kernel.
double ladder_kernel_brute(const Transition& t, const Vec3& n,
                           const CVec3& eps, const CVec3& eps_prime);

/// Crossed kernel by brute force: sum of t_rev * conj(t_dir) over all
/// sublevel assignments. The imaginary part must vanish; it is returned
/// so callers can check.
Complex crossed_kernel_brute(const Transition& t, const Vec3& n,
                             const CVec3& eps, const CVec3& eps_prime);

/// Every valid transition with twice(J) <= max_twice_j, all three types.
std::vector<Transition> all_transitions(long long max_twice_j);

enum class VerifyLevel { Fast, Full };

struct VerifyCheck {
  std::string name;
  double max_deviation = 0;
  double tolerance = 0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_pass() const;
};

/// Runs the oracle cross-check suites (vertex trace, polarization kernels,
/// reciprocity, ladder cubature, crossed quadrature vs closed forms, F).
/// Fast covers a reduced grid in a few seconds; Full covers every
/// transition with twice(J) <= 8 at the documented tolerances.
VerifyReport run_verification(VerifyLevel level);

std::ostream& operator<<(std::ostream& os, const VerifyReport& report);

}  // namespace cbs
