#pragma once

#include "cbs/half_int.hpp"

namespace cbs {

/// True iff (a, b, c) couple: |a-b| <= c <= a+b and a+b+c is an integer.
bool triangle_ok(HalfInt a, HalfInt b, HalfInt c);

/// Clebsch-Gordan coefficient <j1 j2; m1 m2 | J M> in the Condon-Shortley
/// convention, evaluated with exact big-integer rational arithmetic and
/// converted to double on return. Returns 0 when M != m1 + m2 or the
/// triangle rule fails. Throws std::invalid_argument for projections that
/// are not valid for their momentum (|m| > j or parity mismatch).
double clebsch_gordan(HalfInt j1, HalfInt j2, HalfInt m1, HalfInt m2,
                      HalfInt J, HalfInt M);

/// Wigner 6J symbol {a b c; d e f} from the Racah single-sum formula with
/// exact factorial-ratio arithmetic. Returns 0 when any of the four triads
/// (abc), (aef), (dbf), (dec) violates the triangle rule; this keeps the
/// symbol usable for J of the order of hundreds where log-gamma evaluation
/// loses all significant digits.
double wigner_6j(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e,
                 HalfInt f);

/// Exact square {a b c; d e f}^2, rounded once at the end. Preferred where
/// only the square enters a formula.
double wigner_6j_squared(HalfInt a, HalfInt b, HalfInt c, HalfInt d,
                         HalfInt e, HalfInt f);

}  // namespace cbs
