#pragma once

// Bloch-sphere coordinates, qubit matrices and angle arithmetic.

#include <cmath>
#include <string>

#include "blochprop/errors.hpp"
#include "blochprop/matrix.hpp"

namespace blochprop {

// Tolerance for algebraic identities (round trips, group laws).
inline constexpr double algebraic_tol = 1e-12;
// Tolerance for validating caller-supplied preconditions.
inline constexpr double validation_tol = 1e-9;

// ISO 80000-2: theta_el is measured from +z in [0, pi], phi_az from +x in (-pi, pi].
struct SphericalCoords {
  double r = 0.0;
  double theta_el = 0.0;
  double phi_az = 0.0;
};

// q . sigma, a Hermitian traceless 2x2 matrix.
struct QubitMatrix : Matrix2c {};

// Euler rotation triple in radians. The canonical ranges 0<=phi<=2pi,
// 0<=theta<=pi, 0<=psi<=4pi are not enforced; searches use [0, 2pi) for all three.
struct EulerAngles {
  double phi = 0.0;
  double theta = 0.0;
  double psi = 0.0;

  friend constexpr EulerAngles operator*(double s, EulerAngles a) {
    return {s * a.phi, s * a.theta, s * a.psi};
  }
  friend constexpr bool operator==(const EulerAngles&, const EulerAngles&) = default;
};

inline SphericalCoords cartesian_to_spherical(CartesianVector v) {
  const double hxy = std::hypot(v.x, v.y);
  SphericalCoords s;
  s.r = std::hypot(hxy, v.z);
  if (s.r == 0.0) return s;
  s.theta_el = std::atan2(hxy, v.z);
  // atan2(0, 0) is platform-defined; the pole azimuth is pinned to 0.
  s.phi_az = hxy < algebraic_tol ? 0.0 : std::atan2(v.y, v.x);
  // atan2 may return -pi for y = -0.0; keep the half-open range (-pi, pi].
  if (s.phi_az == -pi) s.phi_az = pi;
  return s;
}

inline CartesianVector spherical_to_cartesian(const SphericalCoords& s) {
  const double st = std::sin(s.theta_el);
  return {s.r * st * std::cos(s.phi_az), s.r * st * std::sin(s.phi_az), s.r * std::cos(s.theta_el)};
}

inline void require_unit(CartesianVector v, const char* what) {
  const double n = norm(v);
  if (!(std::abs(n - 1.0) <= validation_tol))
    throw norm_violation(std::string(what) + ": expected unit norm, got " + std::to_string(n));
}

inline QubitMatrix qubit_to_matrix(CartesianVector v) {
  require_unit(v, "qubit_to_matrix");
  return {{complex(v.z, 0.0), complex(v.x, -v.y), complex(v.x, v.y), complex(-v.z, 0.0)}};
}

inline bool is_hermitian_traceless(const Matrix2c& m, double tol = validation_tol) {
  return std::abs(m.m11.imag()) <= tol && std::abs(m.m22.imag()) <= tol &&
         std::abs(m.m12 - std::conj(m.m21)) <= tol && std::abs(m.m11 + m.m22) <= tol;
}

inline CartesianVector matrix_to_cartesian(const Matrix2c& m) {
  if (!is_hermitian_traceless(m)) throw not_hermitian("matrix_to_cartesian: not a Hermitian traceless matrix");
  const complex i(0.0, 1.0);
  return {((m.m12 + m.m21) / 2.0).real(), ((m.m21 - m.m12) / (2.0 * i)).real(), m.m11.real()};
}

// Shorter arc between two angles on the circle, in [0, pi].
inline double angle_distance(double a, double b) {
  const double d = std::fmod(std::abs(a - b), two_pi);
  return std::min(d, two_pi - d);
}

}  // namespace blochprop
