#pragma once

#include "cbs/kernels.hpp"
#include "cbs/transition.hpp"

#include <vector>

namespace cbs {

/// Channel-resolved coefficients of the spatially integrated double
/// scattering ladder term: gamma_L2 = (9/8)(l1 (w1+w2)^2 + l2 w1 w2 +
/// l3 (w1+w2) w3 + l4 w3^2). l3 = 2 ln 2 - 1/2 and l4 = 2 ln 2 in every
/// channel.
struct LadderCoeffs {
  double l1 = 0, l2 = 0, l3 = 0, l4 = 0;
};

LadderCoeffs ladder_coeffs(ChannelKind k);

/// Sampled coherent-backscattering cone, ready for CSV export.
struct ConeProfile {
  std::vector<double> mu;
  std::vector<double> gamma_crossed;
  std::vector<double> alpha;
  Channel channel;
  Transition transition;
};

/// Ladder double-scattering bistatic coefficient from the channel table.
double gamma_ladder(const WCoeffs& w, const Channel& c);

/// Independent evaluation of gamma_ladder as the 2D angular integral of
/// the ladder kernel over the inter-atom direction; oracle for the table.
double gamma_ladder_cubature(const WCoeffs& w, const Channel& c);

/// The reduced crossed kernel C(x) after the analytic azimuth integral:
/// weighted sum of the channel's c_i(x), including the anisotropy terms of
/// the linear channels. x = |cos| of the inter-atom polar angle.
double reduced_crossed_integrand(const WCoeffs& w, const Channel& c,
                                 double x, double mu);

/// Crossed bistatic coefficient by adaptive quadrature of
/// (9/8) Int_0^1 dx C(x) / sqrt((1+x)^2 + mu^2 (1-x^2)), absolute
/// tolerance 1e-10. This is the arbiter for the closed forms; throws
/// QuadratureError (carrying the best estimate) if refinement fails.
double gamma_crossed_quadrature(const WCoeffs& w, const Channel& c,
                                double mu);

/// The scalar-wave crossed integral F(mu) = Int_0^1 dx /
/// sqrt((1+x)^2 + mu^2 (1-x^2)); F(0) = ln 2, F ~ pi/(2 mu) for large mu.
/// Evaluated from the piecewise closed form with a series bridge across
/// mu = 1 (see README for the choice among printed forms).
double F_mu(double mu);

/// Crossed bistatic coefficient gamma_C2(mu) from the closed-form channel
/// expressions. Falls back to the quadrature near the removable mu = 1
/// singularity and at small mu in the linear channels where the closed
/// anisotropy brackets lose precision; agrees with
/// gamma_crossed_quadrature to better than 1e-8 relative everywhere.
double gamma_crossed(const WCoeffs& w, const Channel& c, double mu);

/// gamma_C2(0) from the backscattering coefficient table. In the parallel
/// channels the table coincides with the ladder table.
double gamma_crossed_zero(const WCoeffs& w, const Channel& c);

/// Leading wing coefficient: gamma_C2(mu) = (9 pi / 8 mu) * wings(w, c)
/// + O(1/mu^2) for mu >> 1.
double wings(const WCoeffs& w, const Channel& c);

/// Interference contrast c2 = gamma_C2(0) / gamma_L2; equals 1 only for
/// the classical line J=0 -> Je=1.
double contrast(const WCoeffs& w, const Channel& c);

/// Enhancement factor alpha(mu) = 1 + gamma_C2(mu) / (gamma_S + gamma_L2).
double enhancement(const WCoeffs& w, const Channel& c, double mu);

/// Uniformly sampled cone of gamma_C2(mu) and alpha(mu) on [0, mu_max].
ConeProfile cone_profile(const Transition& t, const Channel& c,
                         double mu_max, int n_points);

}  // namespace cbs
