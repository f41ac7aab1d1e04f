#pragma once

// Independent reference computations used only by the tests. None of these
// call into the code path they check.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "blochprop/matrix.hpp"

namespace oracle {

using blochprop::CartesianVector;
using blochprop::Matrix3;

// Arc length between two points on the unit circle, via the chord.
inline double circle_arc(double a, double b) {
  const double chord = std::hypot(std::cos(a) - std::cos(b), std::sin(a) - std::sin(b));
  return 2.0 * std::asin(std::min(1.0, chord / 2.0));
}

inline double elevation(CartesianVector v) { return std::acos(v.z / std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z)); }

inline Eigen::Matrix3d to_eigen(const Matrix3& m) {
  Eigen::Matrix3d e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e(i, j) = m(i, j);
  return e;
}

inline Matrix3 from_eigen(const Eigen::Matrix3d& e) {
  Matrix3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = e(i, j);
  return m;
}

// Padé scaling-and-squaring exponential.
inline Matrix3 expm(const Matrix3& m) { return from_eigen(to_eigen(m).exp()); }

// The limit matrix written with cosh/sinh of the imaginary argument t sqrt(-w^2).
inline Matrix3 limit_matrix_complex(double t, double phi, double theta, double psi) {
  using C = std::complex<double>;
  const double k = phi + psi;
  const double w2 = theta * theta + k * k;
  const C r = std::sqrt(C(-w2, 0.0));
  const C ch = std::cosh(t * r);
  const C sh_r = std::sinh(t * r) / r;
  const std::array<C, 9> e{ch,
                           -k * sh_r,
                           theta * sh_r,
                           k * sh_r,
                           (theta * theta + k * k * ch) / w2,
                           -theta * k * (-1.0 + ch) / w2,
                           -theta * sh_r,
                           -theta * k * (-1.0 + ch) / w2,
                           (k * k + theta * theta * ch) / w2};
  Matrix3 m;
  for (std::size_t i = 0; i < 9; ++i) m.a[i] = e[i].real();
  return m;
}

// Eigenvalues by a general dense solver, sorted by imaginary part.
inline std::array<std::complex<double>, 3> eigenvalues(const Matrix3& m) {
  Eigen::EigenSolver<Eigen::Matrix3d> es(to_eigen(m), false);
  std::array<std::complex<double>, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = es.eigenvalues()[i];
  std::sort(out.begin(), out.end(), [](auto a, auto b) { return a.imag() < b.imag(); });
  return out;
}

// Midpoint rule with n panels.
template <class F>
double midpoint(F&& f, double a, double b, long n) {
  const double h = (b - a) / static_cast<double>(n);
  double s = 0.0;
  for (long i = 0; i < n; ++i) s += f(a + (static_cast<double>(i) + 0.5) * h);
  return s * h;
}

inline CartesianVector random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  while (true) {
    const CartesianVector v{g(rng), g(rng), g(rng)};
    const double n = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
    if (n > 1e-6) return {v.x / n, v.y / n, v.z / n};
  }
}

inline std::array<double, 3> random_angles(std::mt19937_64& rng, double hi = 2.0 * blochprop::pi) {
  std::uniform_real_distribution<double> u(0.0, hi);
  return {u(rng), u(rng), u(rng)};
}

}  // namespace oracle
