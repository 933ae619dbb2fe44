#include "cbs/angular.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

namespace cbs {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

// Returns by value: a reference into the cache would dangle when a later
// call in the same expression grows the vector.
cpp_int factorial(long long n) {
  static std::mutex mtx;
  static std::vector<cpp_int> cache{1, 1};
  std::lock_guard<std::mutex> lock(mtx);
  while (static_cast<long long>(cache.size()) <= n)
    cache.push_back(cache.back() * static_cast<long long>(cache.size()));
  return cache[static_cast<size_t>(n)];
}

// Rounds an exact rational to double without overflowing on the huge
// numerators/denominators that factorial ratios produce: scale the
// quotient to ~128 significant bits, convert, then undo with ldexp.
double to_double(const cpp_rational& q) {
  const cpp_int num = boost::multiprecision::numerator(q);
  const cpp_int den = boost::multiprecision::denominator(q);
  if (num == 0) return 0.0;
  const cpp_int mag = num < 0 ? cpp_int(-num) : num;
  const long long shift =
      128 - (static_cast<long long>(boost::multiprecision::msb(mag)) -
             static_cast<long long>(boost::multiprecision::msb(den)));
  cpp_int scaled;
  if (shift >= 0)
    scaled = (num << shift) / den;
  else
    scaled = num / (den << (-shift));
  return std::ldexp(scaled.convert_to<double>(), static_cast<int>(-shift));
}

// Triangle coefficient Delta(abc) = (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!,
// arguments in twice-value units; caller guarantees the triangle rule.
cpp_rational triangle_delta(long long ta, long long tb, long long tc) {
  return cpp_rational(factorial((ta + tb - tc) / 2) *
                          factorial((ta - tb + tc) / 2) *
                          factorial((-ta + tb + tc) / 2),
                      factorial((ta + tb + tc) / 2 + 1));
}

bool triangle_ok_twice(long long ta, long long tb, long long tc) {
  return (ta + tb + tc) % 2 == 0 && tc >= std::llabs(ta - tb) &&
         tc <= ta + tb;
}

// Racah sum for the 6J symbol; returns the exact signed square in
// `squared` (sign carried separately). Arguments in twice-value units,
// triads already checked.
cpp_rational six_j_signed_square(long long ta, long long tb, long long tc,
                                 long long td, long long te, long long tf,
                                 int& sign) {
  const long long t1 = (ta + tb + tc) / 2;
  const long long t2 = (ta + te + tf) / 2;
  const long long t3 = (td + tb + tf) / 2;
  const long long t4 = (td + te + tc) / 2;
  const long long q1 = (ta + tb + td + te) / 2;
  const long long q2 = (tb + tc + te + tf) / 2;
  const long long q3 = (ta + tc + td + tf) / 2;

  const long long tmin = std::max({t1, t2, t3, t4});
  const long long tmax = std::min({q1, q2, q3});

  cpp_rational sum = 0;
  for (long long t = tmin; t <= tmax; ++t) {
    cpp_rational term(factorial(t + 1),
                      factorial(t - t1) * factorial(t - t2) *
                          factorial(t - t3) * factorial(t - t4) *
                          factorial(q1 - t) * factorial(q2 - t) *
                          factorial(q3 - t));
    if (t % 2 != 0) term = -term;
    sum += term;
  }

  sign = sum < 0 ? -1 : 1;
  const cpp_rational radicand = triangle_delta(ta, tb, tc) *
                                triangle_delta(ta, te, tf) *
                                triangle_delta(td, tb, tf) *
                                triangle_delta(td, te, tc);
  return radicand * sum * sum;
}

}  // namespace

bool triangle_ok(HalfInt a, HalfInt b, HalfInt c) {
  if (a.twice() < 0 || b.twice() < 0 || c.twice() < 0) return false;
  return triangle_ok_twice(a.twice(), b.twice(), c.twice());
}

double clebsch_gordan(HalfInt j1, HalfInt j2, HalfInt m1, HalfInt m2,
                      HalfInt J, HalfInt M) {
  if (j1.twice() < 0 || j2.twice() < 0 || J.twice() < 0)
    throw std::invalid_argument("negative angular momentum magnitude");
  if (!valid_projection(j1, m1) || !valid_projection(j2, m2) ||
      !valid_projection(J, M))
    throw std::invalid_argument("invalid projection for Clebsch-Gordan");

  if ((m1 + m2).twice() != M.twice()) return 0.0;
  if (!triangle_ok(j1, j2, J)) return 0.0;

  const long long tj1 = j1.twice(), tj2 = j2.twice(), tJ = J.twice();
  const long long tm1 = m1.twice(), tm2 = m2.twice(), tM = M.twice();

  // Racah's closed form: sqrt(prefactor) * alternating factorial sum,
  // both exact rationals. k counts the summation index.
  const long long kmax = std::min({(tj1 + tj2 - tJ) / 2, (tj1 - tm1) / 2,
                                   (tj2 + tm2) / 2});
  const long long kmin =
      std::max({0LL, (tj2 - tJ - tm1) / 2, (tj1 - tJ + tm2) / 2});

  cpp_rational sum = 0;
  for (long long k = kmin; k <= kmax; ++k) {
    cpp_rational term(
        1, factorial(k) * factorial((tj1 + tj2 - tJ) / 2 - k) *
               factorial((tj1 - tm1) / 2 - k) *
               factorial((tj2 + tm2) / 2 - k) *
               factorial((tJ - tj2 + tm1) / 2 + k) *
               factorial((tJ - tj1 - tm2) / 2 + k));
    if (k % 2 != 0) term = -term;
    sum += term;
  }
  if (sum == 0) return 0.0;

  const cpp_rational prefactor =
      cpp_rational(tJ + 1) * triangle_delta(tj1, tj2, tJ) *
      cpp_rational(factorial((tj1 + tm1) / 2) * factorial((tj1 - tm1) / 2) *
                   factorial((tj2 + tm2) / 2) * factorial((tj2 - tm2) / 2) *
                   factorial((tJ + tM) / 2) * factorial((tJ - tM) / 2));

  const double value = std::sqrt(to_double(prefactor * sum * sum));
  return sum < 0 ? -value : value;
}

double wigner_6j(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e,
                 HalfInt f) {
  if (!triangle_ok(a, b, c) || !triangle_ok(a, e, f) ||
      !triangle_ok(d, b, f) || !triangle_ok(d, e, c))
    return 0.0;
  int sign = 1;
  const cpp_rational sq = six_j_signed_square(
      a.twice(), b.twice(), c.twice(), d.twice(), e.twice(), f.twice(), sign);
  return sign * std::sqrt(to_double(sq));
}

double wigner_6j_squared(HalfInt a, HalfInt b, HalfInt c, HalfInt d,
                         HalfInt e, HalfInt f) {
  if (!triangle_ok(a, b, c) || !triangle_ok(a, e, f) ||
      !triangle_ok(d, b, f) || !triangle_ok(d, e, c))
    return 0.0;
  int sign = 1;
  const cpp_rational sq = six_j_signed_square(
      a.twice(), b.twice(), c.twice(), d.twice(), e.twice(), f.twice(), sign);
  return to_double(sq);
}

}  // namespace cbs
