#include "cbs/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cbs {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

// e'bar . Delta . e as a bilinear form; conjugation happens at call sites.
Complex sandwich(const CVec3& left, const Mat3& delta, const CVec3& right) {
  return dot(left, delta * right);
}

}  // namespace

ChannelVectors channel_polarizations(const Channel& c) {
  const CVec3 lin_x{1.0, 0.0, 0.0};
  const CVec3 lin_y{0.0, 1.0, 0.0};
  const CVec3 hel_plus{kInvSqrt2, Complex(0, kInvSqrt2), 0.0};
  const CVec3 hel_minus{kInvSqrt2, Complex(0, -kInvSqrt2), 0.0};
  switch (c.kind) {
    case ChannelKind::HelPar:
      return {hel_plus, hel_minus};
    case ChannelKind::HelPerp:
      return {hel_plus, hel_plus};
    case ChannelKind::LinPar:
      return {lin_x, lin_x};
    case ChannelKind::LinPerp:
      return {lin_x, lin_y};
  }
  throw std::invalid_argument("unknown polarization channel");
}

const char* channel_name(ChannelKind k) {
  switch (k) {
    case ChannelKind::HelPar:
      return "hpar";
    case ChannelKind::HelPerp:
      return "hperp";
    case ChannelKind::LinPar:
      return "lpar";
    case ChannelKind::LinPerp:
      return "lperp";
  }
  return "?";
}

Mat3 transverse_projector(const Vec3& n) {
  if (std::abs(norm(n) - 1.0) > 1e-9)
    throw std::invalid_argument("projector direction must be unit length");
  Mat3 d;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) d(i, j) = (i == j ? 1.0 : 0.0) - n[i] * n[j];
  return d;
}

double gamma_single(const WCoeffs& w, const Channel& c) {
  const auto [eps, eps_prime] = channel_polarizations(c);
  const double flip = std::norm(dot(conj(eps_prime), eps));
  const double keep = std::norm(dot(eps_prime, eps));
  return 0.75 * (w.w1 * flip + w.w2 * keep + w.w3);
}

double single_diff_cross_section(const Transition& t, double detuning,
                                 double wavenumber, const CVec3& eps,
                                 const CVec3& eps_prime) {
  if (std::abs(norm2(eps) - 1.0) > 1e-9 ||
      std::abs(norm2(eps_prime) - 1.0) > 1e-9)
    throw std::invalid_argument("polarization vectors must be unit");
  const WCoeffs w = w_coeffs(t);
  const double sigma = total_cross_section(t, detuning, wavenumber);
  const double flip = std::norm(dot(conj(eps_prime), eps));
  const double keep = std::norm(dot(eps_prime, eps));
  return 3.0 * sigma / (8.0 * std::numbers::pi) *
         (w.w1 * flip + w.w2 * keep + w.w3);
}

double ladder_kernel(const WCoeffs& w, const Vec3& n, const CVec3& eps,
                     const CVec3& eps_prime) {
  const Mat3 delta = transverse_projector(n);
  const CVec3 eps_bar = conj(eps);
  const CVec3 eps_prime_bar = conj(eps_prime);

  const double horiz = std::norm(sandwich(eps_prime_bar, delta, eps));
  const double diag = std::norm(sandwich(eps_prime, delta, eps));
  const double vert_in = sandwich(eps_bar, delta, eps).real();
  const double vert_out = sandwich(eps_prime_bar, delta, eps_prime).real();

  return (w.w1 * w.w1 + w.w2 * w.w2) * horiz + 2.0 * w.w1 * w.w2 * diag +
         (w.w1 + w.w2) * w.w3 * (vert_in + vert_out) + 2.0 * w.w3 * w.w3;
}

double crossed_kernel(const WCoeffs& w, const Vec3& n, const CVec3& eps,
                      const CVec3& eps_prime) {
  const Mat3 delta = transverse_projector(n);
  const CVec3 eps_bar = conj(eps);
  const CVec3 eps_prime_bar = conj(eps_prime);

  const double horiz = std::norm(sandwich(eps_prime_bar, delta, eps));
  const Complex twist = sandwich(eps_prime_bar, delta, eps_prime) *
                        sandwich(eps, delta, eps_bar);
  const Complex mixed = dot(eps, eps_prime) *
                            sandwich(eps_bar, delta, eps_prime_bar) +
                        dot(eps_bar, eps_prime_bar) *
                            sandwich(eps, delta, eps_prime);
  const double keep = std::norm(dot(eps_prime, eps));

  return (w.w1 * w.w1 + w.w3 * w.w3) * horiz +
         (2.0 * w.w1 * w.w3 * twist + (w.w1 + w.w3) * w.w2 * mixed).real() +
         2.0 * w.w2 * w.w2 * keep;
}

}  // namespace cbs
