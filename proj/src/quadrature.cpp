#include "cbs/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace cbs {

namespace {

// Gauss-Legendre nodes and weights on [-1, 1], generated once by Newton
// iteration on the Legendre recurrence; avoids transcribing tables.
template <int N>
struct GaussRule {
  std::array<double, N> node{};
  std::array<double, N> weight{};

  GaussRule() {
    for (int i = 0; i < (N + 1) / 2; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
      double pp = 0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int k = 0; k < N; ++k) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
        }
        pp = N * (x * p0 - p1) / (x * x - 1.0);
        const double dx = p0 / pp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      node[i] = -x;
      node[N - 1 - i] = x;
      weight[i] = weight[N - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
  }

  double apply(const std::function<double(double)>& f, double a,
               double b) const {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0;
    for (int i = 0; i < N; ++i) sum += weight[i] * f(mid + half * node[i]);
    return half * sum;
  }
};

struct PanelResult {
  double value;
  double error;
  bool converged;
};

PanelResult refine(const std::function<double(double)>& f, double a, double b,
                   double tol, int depth) {
  static const GaussRule<7> g7;
  static const GaussRule<15> g15;

  const double coarse = g7.apply(f, a, b);
  const double fine = g15.apply(f, a, b);
  const double err = std::abs(fine - coarse);
  if (err <= tol || !(b - a > 0)) return {fine, err, true};
  if (depth <= 0) return {fine, err, false};

  const double mid = 0.5 * (a + b);
  const PanelResult left = refine(f, a, mid, 0.5 * tol, depth - 1);
  const PanelResult right = refine(f, mid, b, 0.5 * tol, depth - 1);
  return {left.value + right.value, left.error + right.error,
          left.converged && right.converged};
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, int max_depth) {
  const PanelResult r = refine(f, a, b, abs_tol, max_depth);
  if (!r.converged)
    throw QuadratureError("adaptive quadrature did not converge to " +
                              std::to_string(abs_tol) + " (error estimate " +
                              std::to_string(r.error) + ")",
                          r.value);
  return r.value;
}

}  // namespace cbs
