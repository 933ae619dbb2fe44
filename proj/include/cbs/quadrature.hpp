#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace cbs {

/// Raised when adaptive refinement exhausts its bisection budget; carries
/// the best estimate reached so far.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double best)
      : std::runtime_error(what), best_estimate_(best) {}
  double best_estimate() const { return best_estimate_; }

 private:
  double best_estimate_;
};

/// Adaptive bisection with a nested fixed-order Gauss pair (7/15 points)
/// per panel and deterministic left-to-right panel ordering. Refines until
/// the panel error estimate meets its share of `abs_tol`.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, int max_depth = 48);

}  // namespace cbs
