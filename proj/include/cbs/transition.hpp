#pragma once

#include "cbs/half_int.hpp"

namespace cbs {

/// A closed atomic dipole line J -> Je. Construction enforces the dipole
/// selection rule |J - Je| <= 1 and rejects J = Je = 0.
///
/// Lines with Je = J are accepted even though such transitions are in
/// general not closed for real atoms; the computed quantities are the
/// elastic-scattering ones (see README for the physical caveat).
struct Transition {
  HalfInt j;
  HalfInt je;

  Transition(HalfInt ground, HalfInt excited);
};

/// Weights of the three pairwise contractions in the internally averaged
/// four-point vertex. For every valid transition w1 + w2 + 3*w3 = 1.
struct WCoeffs {
  double w1 = 0;
  double w2 = 0;
  double w3 = 0;
};

/// Scattering medium parameters; detuning is in units of the natural
/// linewidth, so the linewidth itself never appears explicitly.
struct MediumParams {
  double number_density = 0;  // scatterers per unit volume
  double wavenumber = 0;      // 1/length
  double detuning = 0;        // in linewidth units
};

/// Multiplicity ratio (2Je+1) / (3(2J+1)); equals 1 for the classical
/// point-dipole line J=0 -> Je=1.
double multiplicity_ratio(const Transition& t);

/// s_K = 3(2Je+1) {1 1 K; J J Je}^2 for K in {0,1,2}; vanishes when
/// K > 2J. K outside {0,1,2} throws std::invalid_argument.
double s_coeff(const Transition& t, int K);

/// The vertex weights (w1, w2, w3) = ((s0-s2)/3, (s2-s1)/2, (s1+s2)/2).
WCoeffs w_coeffs(const Transition& t);

/// Total scattering cross-section M_J * (6 pi / k^2) / (1 + 4 delta^2)
/// with detuning in linewidth units. Requires wavenumber > 0.
double total_cross_section(const Transition& t, double detuning,
                           double wavenumber);

/// Mean free path 1 / (n * sigma_tot). Requires positive arguments.
double mean_free_path(double sigma_tot, double number_density);

}  // namespace cbs
