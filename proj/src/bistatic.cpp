#include "cbs/bistatic.hpp"

#include "cbs/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cbs {

namespace {

const double kLn2 = std::numbers::ln2;
const double kPi = std::numbers::pi;

// The closed-form anisotropy brackets of the linear channels carry 1/mu^2
// and 1/mu^4 prefactors whose numerators only vanish to matching order in
// exact arithmetic; below this mu the closed forms have lost too many
// digits in double precision and the quadrature takes over.
constexpr double kSmallMuGuard = 0.02;

// Half-width of the removable-singularity band around mu = 1 where the
// (1-mu^2)^4 denominators make the closed forms delegate to quadrature.
constexpr double kUnityGuard = 0.02;

struct WingCoeffs {
  double a1 = 0, a2 = 0, a3 = 0, a4 = 0;
};

WingCoeffs wing_coeffs(const Channel& c) {
  const double cp = std::cos(c.phi);
  const double cp2 = cp * cp;
  switch (c.kind) {
    case ChannelKind::HelPar:
      return {3.0 / 64.0, 0.5, 0.75, 1.0};
    case ChannelKind::HelPerp:
      return {19.0 / 64.0, 0.0, 0.0, 0.0};
    case ChannelKind::LinPar:
      return {(3.0 + 2.0 * cp2 + 3.0 * cp2 * cp2) / 16.0, 0.0,
              0.5 * (1.0 + cp2), 1.0};
    case ChannelKind::LinPerp: {
      const double s2 = std::sin(2.0 * c.phi);
      return {3.0 / 64.0 * s2 * s2, 0.5, 0.0, 0.0};
    }
  }
  throw std::invalid_argument("unknown polarization channel");
}

double combine(const WCoeffs& w, double k1, double k2, double k3,
               double k4) {
  const double u = w.w1 + w.w3;
  return u * u * k1 + w.w1 * w.w3 * k2 + u * w.w2 * k3 + w.w2 * w.w2 * k4;
}

// Anisotropy deformation X(x, mu) in the rationalized form
// mu^2 (1-x^2) / (S + 1 + x)^2, stable at x -> 1 and mu -> 0 where the
// printed difference quotient is 0/0.
double aniso_x(double x, double mu) {
  const double s = std::sqrt((1.0 + x) * (1.0 + x) + mu * mu * (1.0 - x * x));
  const double d = s + 1.0 + x;
  return mu * mu * (1.0 - x * x) / (d * d);
}

struct GammaTerms {
  double g1 = 0, g2 = 0, g3 = 0, g4 = 0;
};

// Closed-form gamma_i(mu); valid away from mu = 1 and, for the linear
// channels, away from small mu (guards applied by the caller).
GammaTerms gamma_terms_closed(const Channel& c, double mu) {
  const double m2 = mu * mu;
  const double m4 = m2 * m2;
  const double m6 = m4 * m2;
  const double m8 = m4 * m4;
  const double r = std::sqrt(1.0 + m2);
  const double F = F_mu(mu);
  const double om = 1.0 - m2;
  const double om2 = om * om;
  const double om4 = om2 * om2;

  GammaTerms g;
  const double core_g2 =
      9.0 / (8.0 * om2) * (-4.0 - 2.0 * m2 + 3.0 * r + (2.0 + m4) * F);
  const double core_g3_bracket =
      -4.0 - 2.0 * m2 + 3.0 * r + (4.0 - 4.0 * m2 + 3.0 * m4) * F;

  switch (c.kind) {
    case ChannelKind::HelPar:
      g.g1 = 3.0 / (256.0 * om4) *
             (32.0 - 176.0 * m2 - 84.0 * m4 + 18.0 * m6 +
              (-22.0 + 144.0 * m2 - 17.0 * m4) * r +
              3.0 * m4 * (48.0 - 16.0 * m2 + 3.0 * m4) * F);
      g.g2 = core_g2;
      g.g3 = 9.0 / (16.0 * om2) * core_g3_bracket;
      g.g4 = 2.25 * F;
      break;
    case ChannelKind::HelPerp:
      g.g1 = 3.0 / (256.0 * om4) *
             (-2.0 * (80.0 - 56.0 * m2 + 42.0 * m4 + 39.0 * m6) +
              (122.0 - 144.0 * m2 + 127.0 * m4) * r +
              3.0 * (32.0 - 64.0 * m2 + 96.0 * m4 - 48.0 * m6 + 19.0 * m8) *
                  F);
      break;
    case ChannelKind::LinPar: {
      const double a1w =
          (-56.0 * (-2.0 + 8.0 * m2 + 4.0 * m6 + 5.0 * m8) +
           28.0 * (-4.0 + 18.0 * m2 - 14.0 * m4 + 15.0 * m6) * r +
           12.0 * m4 * (16.0 + 8.0 * m2 + 6.0 * m4 + 5.0 * m6) * F) /
          m2;
      const double a2w =
          (48.0 - 152.0 * m2 + 128.0 * m4 + 48.0 * m6 - 212.0 * m8 -
           70.0 * m8 * m2 +
           (-48.0 + 176.0 * m2 - 222.0 * m4 + 88.0 * m6 + 111.0 * m8) * r +
           3.0 * m8 * (8.0 + 24.0 * m2 + 3.0 * m4) * F) /
          m4;
      const double bw = (2.0 - 4.0 * m2 - 4.0 * m4 + (-2.0 + 5.0 * m2) * r +
                         m4 * (2.0 + m2) * F) /
                        m2;
      g.g1 = 3.0 / (512.0 * om4) *
             (-288.0 + 48.0 * m2 - 252.0 * m4 - 138.0 * m6 +
              (222.0 - 144.0 * m2 + 237.0 * m4) * r +
              (192.0 - 384.0 * m2 + 720.0 * m4 - 336.0 * m6 + 123.0 * m8) *
                  F +
              a1w * std::cos(2.0 * c.phi) + a2w * std::cos(4.0 * c.phi));
      g.g3 = 9.0 / (16.0 * om2) *
             (core_g3_bracket + bw * std::cos(2.0 * c.phi));
      g.g4 = 2.25 * F;
      break;
    }
    case ChannelKind::LinPerp: {
      const double a2w =
          (48.0 - 152.0 * m2 + 128.0 * m4 + 48.0 * m6 - 212.0 * m8 -
           70.0 * m8 * m2 +
           (-48.0 + 176.0 * m2 - 222.0 * m4 + 88.0 * m6 + 111.0 * m8) * r +
           3.0 * m8 * (8.0 + 24.0 * m2 + 3.0 * m4) * F) /
          m4;
      g.g1 = 3.0 / (512.0 * om4) *
             (32.0 - 176.0 * m2 - 84.0 * m4 + 18.0 * m6 +
              (-22.0 + 144.0 * m2 - 17.0 * m4) * r +
              3.0 * m4 * (48.0 - 16.0 * m2 + 3.0 * m4) * F -
              a2w * std::cos(4.0 * c.phi));
      g.g2 = core_g2;
      break;
    }
  }
  return g;
}

}  // namespace

LadderCoeffs ladder_coeffs(ChannelKind k) {
  LadderCoeffs l;
  l.l3 = 2.0 * kLn2 - 0.5;
  l.l4 = 2.0 * kLn2;
  switch (k) {
    case ChannelKind::HelPar:
      l.l1 = 5.0 / 48.0;
      l.l2 = 2.0 * kLn2 - 1.0;
      break;
    case ChannelKind::HelPerp:
      l.l1 = kLn2 - 19.0 / 48.0;
      l.l2 = -(2.0 * kLn2 - 1.0);
      break;
    case ChannelKind::LinPar:
      l.l1 = kLn2 - 11.0 / 32.0;
      l.l2 = 0.0;
      break;
    case ChannelKind::LinPerp:
      l.l1 = 5.0 / 96.0;
      l.l2 = 0.0;
      break;
  }
  return l;
}

double gamma_ladder(const WCoeffs& w, const Channel& c) {
  const LadderCoeffs l = ladder_coeffs(c.kind);
  const double u = w.w1 + w.w2;
  return 9.0 / 8.0 *
         (l.l1 * u * u + l.l2 * w.w1 * w.w2 + l.l3 * u * w.w3 +
          l.l4 * w.w3 * w.w3);
}

double gamma_ladder_cubature(const WCoeffs& w, const Channel& c) {
  const auto [eps, eps_prime] = channel_polarizations(c);
  const auto outer = [&](double x) {
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    const auto inner = [&](double phi) {
      const Vec3 n{s * std::cos(phi), s * std::sin(phi), x};
      return ladder_kernel(w, n, eps, eps_prime);
    };
    return integrate_adaptive(inner, 0.0, 2.0 * kPi, 1e-13) / (1.0 + x);
  };
  return 9.0 / (16.0 * kPi) * integrate_adaptive(outer, 0.0, 1.0, 1e-11);
}

double reduced_crossed_integrand(const WCoeffs& w, const Channel& c,
                                 double x, double mu) {
  if (x < 0.0 || x > 1.0)
    throw std::invalid_argument("reduced integrand needs 0 <= x <= 1");
  const double x2 = x * x;
  const double omx2 = 1.0 - x2;
  double c1 = 0, c2 = 0, c3 = 0, c4 = 0;
  switch (c.kind) {
    case ChannelKind::HelPar:
      c1 = 0.25 * omx2 * omx2;
      c2 = 2.0 * x2;
      c3 = 1.0 + x2;
      c4 = 2.0;
      break;
    case ChannelKind::HelPerp:
      c1 = 0.25 * (1.0 + x2) * (1.0 + x2);
      break;
    case ChannelKind::LinPar: {
      const double X = aniso_x(x, mu);
      const double a_par = omx2 * omx2 / 8.0 *
                               (1.0 + X * X * std::cos(4.0 * c.phi)) +
                           0.5 * (1.0 - x2 * x2) * X * std::cos(2.0 * c.phi);
      const double b_par = omx2 * X * std::cos(2.0 * c.phi);
      c1 = 0.25 * (1.0 + x2) * (1.0 + x2) + a_par;
      c3 = 1.0 + x2 + b_par;
      c4 = 2.0;
      break;
    }
    case ChannelKind::LinPerp: {
      const double X = aniso_x(x, mu);
      c1 = omx2 * omx2 / 8.0 * (1.0 - X * X * std::cos(4.0 * c.phi));
      c2 = 2.0 * x2;
      break;
    }
  }
  return combine(w, c1, c2, c3, c4);
}

double gamma_crossed_quadrature(const WCoeffs& w, const Channel& c,
                                double mu) {
  if (mu < 0.0) throw std::invalid_argument("mu must be non-negative");
  const auto f = [&](double x) {
    const double root =
        std::sqrt((1.0 + x) * (1.0 + x) + mu * mu * (1.0 - x * x));
    return reduced_crossed_integrand(w, c, x, mu) / root;
  };
  return 9.0 / 8.0 * integrate_adaptive(f, 0.0, 1.0, 1e-10);
}

double F_mu(double mu) {
  mu = std::abs(mu);
  const double t = (1.0 - mu) * (1.0 + mu);
  // z is the rationalized (sqrt(1+mu^2)-1)/(sqrt(2) mu^2).
  const double z = 1.0 / (std::sqrt(2.0) * (std::sqrt(1.0 + mu * mu) + 1.0));

  if (std::abs(t) < 0.04) {
    // Both closed branches are 0/0 at mu = 1; the shared series
    // 2 sum_n (-1)^n C_n z^(2n+1) t^n (C_n the arcsine coefficients)
    // converges geometrically with ratio z^2 t < 4e-3 here.
    double coeff = 1.0;  // C_0
    double zpow = z;
    double tpow = 1.0;
    double sum = 0.0;
    for (int n = 0; n <= 12; ++n) {
      sum += (n % 2 == 0 ? 1.0 : -1.0) * coeff * zpow * tpow;
      coeff *= (2.0 * n + 1.0) * (2.0 * n + 1.0) /
               ((2.0 * n + 2.0) * (2.0 * n + 3.0));
      zpow *= z * z;
      tpow *= t;
    }
    return 2.0 * sum;
  }
  if (mu < 1.0) {
    const double s = std::sqrt(t);
    return 2.0 / s * std::asinh(z * s);
  }
  const double s = std::sqrt(-t);
  return 2.0 / s * std::asin(z * s);
}

double gamma_crossed(const WCoeffs& w, const Channel& c, double mu) {
  if (mu < 0.0) throw std::invalid_argument("mu must be non-negative");
  if (mu == 0.0) return gamma_crossed_zero(w, c);

  const bool linear =
      c.kind == ChannelKind::LinPar || c.kind == ChannelKind::LinPerp;
  if ((linear && mu < kSmallMuGuard) || std::abs(mu - 1.0) < kUnityGuard)
    return gamma_crossed_quadrature(w, c, mu);

  const GammaTerms g = gamma_terms_closed(c, mu);
  return combine(w, g.g1, g.g2, g.g3, g.g4);
}

double gamma_crossed_zero(const WCoeffs& w, const Channel& c) {
  double c1 = 0, c2 = 0, c3 = 0, c4 = 0;
  switch (c.kind) {
    case ChannelKind::HelPar:
      c1 = 5.0 / 48.0;
      c2 = 2.0 * kLn2 - 1.0;
      c3 = 2.0 * kLn2 - 0.5;
      c4 = 2.0 * kLn2;
      break;
    case ChannelKind::HelPerp:
      c1 = kLn2 - 19.0 / 48.0;
      break;
    case ChannelKind::LinPar:
      c1 = kLn2 - 11.0 / 32.0;
      c3 = 2.0 * kLn2 - 0.5;
      c4 = 2.0 * kLn2;
      break;
    case ChannelKind::LinPerp:
      c1 = 5.0 / 96.0;
      c2 = 2.0 * kLn2 - 1.0;
      break;
  }
  return 9.0 / 8.0 * combine(w, c1, c2, c3, c4);
}

double wings(const WCoeffs& w, const Channel& c) {
  const WingCoeffs a = wing_coeffs(c);
  return combine(w, a.a1, a.a2, a.a3, a.a4);
}

double contrast(const WCoeffs& w, const Channel& c) {
  const double ladder = gamma_ladder(w, c);
  if (!(ladder > 0))
    throw std::invalid_argument("contrast undefined for zero ladder term");
  return gamma_crossed_zero(w, c) / ladder;
}

double enhancement(const WCoeffs& w, const Channel& c, double mu) {
  const double background = gamma_single(w, c) + gamma_ladder(w, c);
  if (!(background > 0))
    throw std::invalid_argument(
        "enhancement undefined for zero background intensity");
  return 1.0 + gamma_crossed(w, c, mu) / background;
}

ConeProfile cone_profile(const Transition& t, const Channel& c,
                         double mu_max, int n_points) {
  if (!(mu_max > 0)) throw std::invalid_argument("mu_max must be positive");
  if (n_points < 2) throw std::invalid_argument("need at least two points");

  const WCoeffs w = w_coeffs(t);
  ConeProfile p{.mu = {}, .gamma_crossed = {}, .alpha = {}, .channel = c,
                .transition = t};
  p.mu.reserve(static_cast<size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    const double mu = mu_max * static_cast<double>(i) / (n_points - 1);
    p.mu.push_back(mu);
    p.gamma_crossed.push_back(gamma_crossed(w, c, mu));
    p.alpha.push_back(enhancement(w, c, mu));
  }
  return p;
}

}  // namespace cbs
