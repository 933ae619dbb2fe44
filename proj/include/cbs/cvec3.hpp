#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace cbs {

using Complex = std::complex<double>;

/// Real 3-vector (directions, projectors).
struct Vec3 {
  std::array<double, 3> v{};

  double& operator[](int i) { return v[static_cast<size_t>(i)]; }
  double operator[](int i) const { return v[static_cast<size_t>(i)]; }
};

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  return {a[0] / n, a[1] / n, a[2] / n};
}

/// Complex 3-vector in the Cartesian basis. The dot product is bilinear
/// (never conjugates); conjugation is explicit at call sites wherever a
/// conjugated polarization enters a formula.
struct CVec3 {
  std::array<Complex, 3> v{};

  CVec3() = default;
  CVec3(Complex x, Complex y, Complex z) : v{x, y, z} {}
  explicit CVec3(const Vec3& r) : v{r[0], r[1], r[2]} {}

  Complex& operator[](int i) { return v[static_cast<size_t>(i)]; }
  const Complex& operator[](int i) const { return v[static_cast<size_t>(i)]; }
};

inline Complex dot(const CVec3& a, const CVec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline CVec3 conj(const CVec3& a) {
  return {std::conj(a[0]), std::conj(a[1]), std::conj(a[2])};
}
inline double norm2(const CVec3& a) {
  return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]);
}
inline CVec3 operator+(const CVec3& a, const CVec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline CVec3 operator-(const CVec3& a, const CVec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline CVec3 operator*(Complex s, const CVec3& a) {
  return {s * a[0], s * a[1], s * a[2]};
}

/// Real symmetric 3x3 matrix; holds the transverse projector.
struct Mat3 {
  std::array<std::array<double, 3>, 3> a{};

  double& operator()(int i, int j) {
    return a[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  double operator()(int i, int j) const {
    return a[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
};

inline CVec3 operator*(const Mat3& m, const CVec3& x) {
  CVec3 r;
  for (int i = 0; i < 3; ++i)
    r[i] = m(i, 0) * x[0] + m(i, 1) * x[1] + m(i, 2) * x[2];
  return r;
}

/// Complex 3x3 matrix; holds scattering tensors.
struct CMat3 {
  std::array<std::array<Complex, 3>, 3> a{};

  Complex& operator()(int i, int j) {
    return a[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  const Complex& operator()(int i, int j) const {
    return a[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }

  static CMat3 identity() {
    CMat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
  }
};

inline CVec3 operator*(const CMat3& m, const CVec3& x) {
  CVec3 r;
  for (int i = 0; i < 3; ++i)
    r[i] = m(i, 0) * x[0] + m(i, 1) * x[1] + m(i, 2) * x[2];
  return r;
}

inline CMat3 transpose(const CMat3& m) {
  CMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = m(j, i);
  return r;
}

}  // namespace cbs
