#include "cbs/verify.hpp"

#include "cbs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

namespace cbs {

namespace {

struct SublevelAmplitudes {
  // Delta . t(m, m') . eps and t(m, m')^T . conj(eps') for every ground
  // sublevel pair, so a two-atom amplitude is a single 3-vector dot.
  std::vector<CVec3> in_leg;
  std::vector<CVec3> out_leg;
};

SublevelAmplitudes precompute_legs(const Transition& t, const Vec3& n,
                                   const CVec3& eps, const CVec3& eps_prime) {
  const Mat3 delta = transverse_projector(n);
  const CVec3 eps_prime_bar = conj(eps_prime);
  const long long nm = t.j.twice() + 1;

  SublevelAmplitudes legs;
  legs.in_leg.reserve(static_cast<size_t>(nm * nm));
  legs.out_leg.reserve(static_cast<size_t>(nm * nm));
  for (long long im = 0; im < nm; ++im)
    for (long long imp = 0; imp < nm; ++imp) {
      const HalfInt m = HalfInt::from_twice(2 * im - t.j.twice());
      const HalfInt mp = HalfInt::from_twice(2 * imp - t.j.twice());
      const ScatteringTensor tensor = scattering_tensor(t, m, mp);
      legs.in_leg.push_back(delta * (tensor * eps));
      legs.out_leg.push_back(transpose(tensor) * eps_prime_bar);
    }
  return legs;
}

double kernel_norm(const Transition& t) {
  const double mj = multiplicity_ratio(t);
  const double g = static_cast<double>(t.j.twice() + 1);
  return mj * mj * g * g;
}

std::mt19937_64 seeded_rng() { return std::mt19937_64(0x9e3779b97f4a7c15ULL); }

CVec3 random_cvec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CVec3 v;
  for (int i = 0; i < 3; ++i) v[i] = Complex(u(rng), u(rng));
  return v;
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  while (true) {
    const Vec3 v{u(rng), u(rng), u(rng)};
    const double n = norm(v);
    if (n > 0.1 && n <= 1.0) return normalized(v);
  }
}

const Channel kChannels[] = {{ChannelKind::HelPar, 0.0},
                             {ChannelKind::HelPerp, 0.0},
                             {ChannelKind::LinPar, 0.0},
                             {ChannelKind::LinPerp, 0.0}};

VerifyCheck check_trace(long long max_twice_j, int n_samples) {
  auto rng = seeded_rng();
  double worst = 0;
  for (const Transition& t : all_transitions(max_twice_j)) {
    const WCoeffs w = w_coeffs(t);
    for (int k = 0; k < n_samples; ++k) {
      const CVec3 x1 = random_cvec(rng), x2 = random_cvec(rng),
                  x3 = random_cvec(rng), x4 = random_cvec(rng);
      const Complex closed = vertex_trace_closed(w, x1, x2, x3, x4);
      const Complex brute = vertex_trace_oracle(t, x1, x2, x3, x4);
      worst = std::max(worst, std::abs(closed - brute));
    }
  }
  return {"vertex trace: closed form vs sublevel sum", worst, 1e-12,
          worst <= 1e-12};
}

VerifyCheck check_kernels(long long max_twice_j, int n_geometries) {
  auto rng = seeded_rng();
  double worst = 0;
  for (const Transition& t : all_transitions(max_twice_j)) {
    const WCoeffs w = w_coeffs(t);
    for (const Channel& c : kChannels) {
      const auto [eps, eps_prime] = channel_polarizations(c);
      for (int k = 0; k < n_geometries; ++k) {
        const Vec3 n = random_unit(rng);
        const double ladder_closed = ladder_kernel(w, n, eps, eps_prime);
        const double ladder_brute = ladder_kernel_brute(t, n, eps, eps_prime);
        const double crossed_closed = crossed_kernel(w, n, eps, eps_prime);
        const Complex crossed_brute =
            crossed_kernel_brute(t, n, eps, eps_prime);
        worst = std::max({worst, std::abs(ladder_closed - ladder_brute),
                          std::abs(crossed_closed - crossed_brute.real()),
                          std::abs(crossed_brute.imag())});
      }
    }
  }
  return {"polarization kernels: closed forms vs sublevel sums", worst, 1e-12,
          worst <= 1e-12};
}

VerifyCheck check_reciprocity(int n_geometries) {
  auto rng = seeded_rng();
  const Transition t(1, 2);
  double worst = 0;
  for (int k = 0; k < n_geometries; ++k) {
    const Vec3 n = random_unit(rng);
    const CVec3 eps = random_cvec(rng), eps_prime = random_cvec(rng);
    for (long long t1 = -t.j.twice(); t1 <= t.j.twice(); t1 += 2)
      for (long long t2 = -t.j.twice(); t2 <= t.j.twice(); t2 += 2)
        for (long long t3 = -t.j.twice(); t3 <= t.j.twice(); t3 += 2)
          for (long long t4 = -t.j.twice(); t4 <= t.j.twice(); t4 += 2)
            worst = std::max(
                worst, reciprocity_residual(
                           t, n, eps, eps_prime, HalfInt::from_twice(t1),
                           HalfInt::from_twice(t2), HalfInt::from_twice(t3),
                           HalfInt::from_twice(t4)));
  }
  return {"generalized reciprocity residual (J=1, Je=2)", worst, 1e-12,
          worst <= 1e-12};
}

VerifyCheck check_ladder_cubature(long long max_twice_j) {
  double worst = 0;
  for (const Transition& t : all_transitions(max_twice_j)) {
    const WCoeffs w = w_coeffs(t);
    for (const Channel& c : kChannels)
      worst = std::max(
          worst, std::abs(gamma_ladder(w, c) - gamma_ladder_cubature(w, c)));
  }
  return {"gamma_L2 table vs 2D angular cubature", worst, 1e-8,
          worst <= 1e-8};
}

VerifyCheck check_crossed_quadrature(long long max_twice_j,
                                     const std::vector<double>& mu_grid) {
  const double phis[] = {0.0, std::numbers::pi / 8, std::numbers::pi / 4,
                         std::numbers::pi / 2};
  double worst = 0;
  for (const Transition& t : all_transitions(max_twice_j)) {
    const WCoeffs w = w_coeffs(t);
    for (const Channel& base : kChannels)
      for (const double phi : phis) {
        const Channel c{base.kind, phi};
        for (const double mu : mu_grid) {
          const double closed = gamma_crossed(w, c, mu);
          const double quad = gamma_crossed_quadrature(w, c, mu);
          const double rel =
              std::abs(closed - quad) / std::max(std::abs(quad), 1e-12);
          worst = std::max(worst, rel);
        }
      }
  }
  return {"gamma_C2 closed forms vs adaptive quadrature (relative)", worst,
          1e-6, worst <= 1e-6};
}

VerifyCheck check_f_integral(int n_points) {
  double worst = 0;
  for (int i = 0; i <= n_points; ++i) {
    // Geometric-ish grid on [0, 100] that straddles the mu = 1 bridge.
    const double mu = 100.0 * std::pow(static_cast<double>(i) / n_points, 3);
    const auto f = [&](double x) {
      return 1.0 /
             std::sqrt((1.0 + x) * (1.0 + x) + mu * mu * (1.0 - x * x));
    };
    const double quad = integrate_adaptive(f, 0.0, 1.0, 1e-12);
    worst = std::max(worst, std::abs(F_mu(mu) - quad));
  }
  for (const double mu : {0.95, 0.99, 0.999, 1.0, 1.001, 1.01, 1.05}) {
    const auto f = [&](double x) {
      return 1.0 /
             std::sqrt((1.0 + x) * (1.0 + x) + mu * mu * (1.0 - x * x));
    };
    const double quad = integrate_adaptive(f, 0.0, 1.0, 1e-12);
    worst = std::max(worst, std::abs(F_mu(mu) - quad));
  }
  return {"F(mu) vs defining integral", worst, 1e-9, worst <= 1e-9};
}

}  // namespace

double ladder_kernel_brute(const Transition& t, const Vec3& n,
                           const CVec3& eps, const CVec3& eps_prime) {
  const SublevelAmplitudes legs = precompute_legs(t, n, eps, eps_prime);
  double sum = 0;
  for (const CVec3& out : legs.out_leg)
    for (const CVec3& in : legs.in_leg) sum += std::norm(dot(out, in));
  return sum / kernel_norm(t);
}

Complex crossed_kernel_brute(const Transition& t, const Vec3& n,
                             const CVec3& eps, const CVec3& eps_prime) {
  const SublevelAmplitudes legs = precompute_legs(t, n, eps, eps_prime);
  const size_t count = legs.in_leg.size();
  Complex sum = 0;
  for (size_t a = 0; a < count; ++a)
    for (size_t b = 0; b < count; ++b) {
      const Complex direct = dot(legs.out_leg[b], legs.in_leg[a]);
      const Complex reverse = dot(legs.out_leg[a], legs.in_leg[b]);
      sum += reverse * std::conj(direct);
    }
  return sum / kernel_norm(t);
}

std::vector<Transition> all_transitions(long long max_twice_j) {
  std::vector<Transition> out;
  for (long long tj = 0; tj <= max_twice_j; ++tj) {
    const HalfInt j = HalfInt::from_twice(tj);
    out.emplace_back(j, HalfInt::from_twice(tj + 2));
    if (tj >= 1) out.emplace_back(j, j);
    if (tj >= 2) out.emplace_back(j, HalfInt::from_twice(tj - 2));
  }
  return out;
}

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const VerifyCheck& c) { return c.pass; });
}

VerifyReport run_verification(VerifyLevel level) {
  const bool full = level == VerifyLevel::Full;
  const long long max_tj = full ? 8 : 4;

  VerifyReport report;
  report.checks.push_back(check_trace(max_tj, full ? 200 : 40));
  report.checks.push_back(check_kernels(max_tj, full ? 100 : 20));
  report.checks.push_back(check_reciprocity(full ? 100 : 20));
  report.checks.push_back(check_ladder_cubature(full ? 8 : 2));
  report.checks.push_back(check_crossed_quadrature(
      max_tj, full ? std::vector<double>{0.0, 0.3, 0.7, 0.95, 1.05, 2.0, 5.0,
                                         10.0}
                   : std::vector<double>{0.0, 0.7, 2.0}));
  report.checks.push_back(check_f_integral(full ? 200 : 50));
  return report;
}

std::ostream& operator<<(std::ostream& os, const VerifyReport& report) {
  for (const VerifyCheck& c : report.checks) {
    os << (c.pass ? "[ok]   " : "[FAIL] ") << c.name
       << ": max deviation " << c.max_deviation << " (tolerance "
       << c.tolerance << ")\n";
  }
  return os;
}

}  // namespace cbs
