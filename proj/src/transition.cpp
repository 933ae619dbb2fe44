#include "cbs/transition.hpp"

#include "cbs/angular.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cbs {

Transition::Transition(HalfInt ground, HalfInt excited)
    : j(ground), je(excited) {
  if (j.twice() < 0 || je.twice() < 0)
    throw std::invalid_argument("angular momenta must be non-negative");
  if ((j - je).twice() % 2 != 0)
    throw std::invalid_argument(
        "J and Je must both be integer or both half-integer");
  if (std::abs((j - je).twice()) > 2)
    throw std::invalid_argument("dipole selection rule requires |J - Je| <= 1");
  if (j.twice() == 0 && je.twice() == 0)
    throw std::invalid_argument("no dipole line exists for J = 0 -> Je = 0");
}

double multiplicity_ratio(const Transition& t) {
  return static_cast<double>(t.je.twice() + 1) /
         (3.0 * static_cast<double>(t.j.twice() + 1));
}

double s_coeff(const Transition& t, int K) {
  if (K < 0 || K > 2)
    throw std::invalid_argument("s_K is defined for K in {0, 1, 2}");
  const double sixj_sq =
      wigner_6j_squared(1, 1, K, t.j, t.j, t.je);
  return 3.0 * static_cast<double>(t.je.twice() + 1) * sixj_sq;
}

WCoeffs w_coeffs(const Transition& t) {
  const double s0 = s_coeff(t, 0);
  const double s1 = s_coeff(t, 1);
  const double s2 = s_coeff(t, 2);
  return {(s0 - s2) / 3.0, (s2 - s1) / 2.0, (s1 + s2) / 2.0};
}

double total_cross_section(const Transition& t, double detuning,
                           double wavenumber) {
  if (!(wavenumber > 0))
    throw std::invalid_argument("wavenumber must be positive");
  const double resonant = 6.0 * std::numbers::pi / (wavenumber * wavenumber);
  return multiplicity_ratio(t) * resonant / (1.0 + 4.0 * detuning * detuning);
}

double mean_free_path(double sigma_tot, double number_density) {
  if (!(sigma_tot > 0) || !(number_density > 0))
    throw std::invalid_argument(
        "mean free path requires positive cross-section and density");
  return 1.0 / (number_density * sigma_tot);
}

}  // namespace cbs
