#pragma once

// Small fixed-size value types: real 3-vectors, real 3x3 and complex 2x2
// matrices. Row-vector convention throughout: a vector is rotated by
// right-multiplication, w = v * M.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace blochprop {

using complex = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

struct CartesianVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr CartesianVector operator+(CartesianVector a, CartesianVector b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr CartesianVector operator-(CartesianVector a, CartesianVector b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr CartesianVector operator*(double s, CartesianVector a) {
    return {s * a.x, s * a.y, s * a.z};
  }
  friend constexpr bool operator==(const CartesianVector&, const CartesianVector&) = default;
};

inline constexpr double dot(CartesianVector a, CartesianVector b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double norm(CartesianVector v) { return std::hypot(std::hypot(v.x, v.y), v.z); }

inline bool is_finite(CartesianVector v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

struct Matrix3 {
  std::array<double, 9> a{};

  constexpr double& operator()(std::size_t i, std::size_t j) { return a[3 * i + j]; }
  constexpr double operator()(std::size_t i, std::size_t j) const { return a[3 * i + j]; }

  static constexpr Matrix3 identity() { return Matrix3{{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }
  static constexpr Matrix3 zero() { return Matrix3{}; }
};

inline constexpr Matrix3 operator*(const Matrix3& l, const Matrix3& r) {
  Matrix3 out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += l(i, k) * r(k, j);
      out(i, j) = s;
    }
  return out;
}

inline constexpr Matrix3 operator+(const Matrix3& l, const Matrix3& r) {
  Matrix3 out;
  for (std::size_t k = 0; k < 9; ++k) out.a[k] = l.a[k] + r.a[k];
  return out;
}

inline constexpr Matrix3 operator-(const Matrix3& l, const Matrix3& r) {
  Matrix3 out;
  for (std::size_t k = 0; k < 9; ++k) out.a[k] = l.a[k] - r.a[k];
  return out;
}

inline constexpr Matrix3 operator*(double s, const Matrix3& m) {
  Matrix3 out;
  for (std::size_t k = 0; k < 9; ++k) out.a[k] = s * m.a[k];
  return out;
}

// Row vector times matrix.
inline constexpr CartesianVector operator*(CartesianVector v, const Matrix3& m) {
  return {v.x * m(0, 0) + v.y * m(1, 0) + v.z * m(2, 0),
          v.x * m(0, 1) + v.y * m(1, 1) + v.z * m(2, 1),
          v.x * m(0, 2) + v.y * m(1, 2) + v.z * m(2, 2)};
}

inline constexpr Matrix3 transpose(const Matrix3& m) {
  Matrix3 out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out(i, j) = m(j, i);
  return out;
}

inline constexpr double trace(const Matrix3& m) { return m(0, 0) + m(1, 1) + m(2, 2); }

inline constexpr double determinant(const Matrix3& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

inline double frobenius_norm(const Matrix3& m) {
  double s = 0.0;
  for (double x : m.a) s += x * x;
  return std::sqrt(s);
}

inline double max_abs_diff(const Matrix3& l, const Matrix3& r) {
  double d = 0.0;
  for (std::size_t k = 0; k < 9; ++k) d = std::max(d, std::abs(l.a[k] - r.a[k]));
  return d;
}

// m^n by repeated squaring.
template <class M>
M power(M m, unsigned long long n) {
  M result = M::identity();
  while (n > 0) {
    if (n & 1ULL) result = result * m;
    n >>= 1ULL;
    if (n > 0) m = m * m;
  }
  return result;
}

struct Matrix2c {
  complex m11{}, m12{}, m21{}, m22{};

  static constexpr Matrix2c identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

inline Matrix2c operator*(const Matrix2c& l, const Matrix2c& r) {
  return {l.m11 * r.m11 + l.m12 * r.m21, l.m11 * r.m12 + l.m12 * r.m22,
          l.m21 * r.m11 + l.m22 * r.m21, l.m21 * r.m12 + l.m22 * r.m22};
}

inline Matrix2c adjoint(const Matrix2c& m) {
  return {std::conj(m.m11), std::conj(m.m21), std::conj(m.m12), std::conj(m.m22)};
}

inline complex determinant(const Matrix2c& m) { return m.m11 * m.m22 - m.m12 * m.m21; }

inline double max_abs_diff(const Matrix2c& l, const Matrix2c& r) {
  return std::max({std::abs(l.m11 - r.m11), std::abs(l.m12 - r.m12), std::abs(l.m21 - r.m21),
                   std::abs(l.m22 - r.m22)});
}

}  // namespace blochprop
