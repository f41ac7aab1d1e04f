#pragma once

// The two rotation pipelines.
//
// SU(2): a qubit matrix is conjugated, M' = U M U^dagger.
// Euler: the Cartesian row vector is right-multiplied, q' = q S.
//
// For the same (phi, theta, psi) both give the same rotated vector:
// conjugation by U(phi, theta, psi) is the row action of S(phi, theta, psi),
// equivalently the column action of Rz(phi) Ry(theta) Rz(psi) = S^T.

#include <cmath>

#include "blochprop/bloch.hpp"
#include "blochprop/errors.hpp"
#include "blochprop/matrix.hpp"

namespace blochprop {

struct SU2Matrix : Matrix2c {
  static SU2Matrix identity() { return {Matrix2c::identity()}; }
};

inline SU2Matrix operator*(const SU2Matrix& l, const SU2Matrix& r) {
  return {static_cast<const Matrix2c&>(l) * static_cast<const Matrix2c&>(r)};
}

struct RotationMatrix3 : Matrix3 {
  static constexpr RotationMatrix3 identity() { return {Matrix3::identity()}; }
};

inline constexpr RotationMatrix3 operator*(const RotationMatrix3& l, const RotationMatrix3& r) {
  return {static_cast<const Matrix3&>(l) * static_cast<const Matrix3&>(r)};
}

inline constexpr RotationMatrix3 transpose(const RotationMatrix3& m) {
  return {transpose(static_cast<const Matrix3&>(m))};
}

// Unit rotation axis.
class Axis {
public:
  // Throws norm_violation unless |(x, y, z)| = 1 within validation_tol.
  Axis(double x, double y, double z) : n_{x, y, z} { require_unit(n_, "Axis"); }

  static Axis normalized(CartesianVector v) {
    const double n = norm(v);
    if (!(n > 0.0) || !std::isfinite(n)) throw norm_violation("Axis::normalized: zero or non-finite vector");
    const CartesianVector u = (1.0 / n) * v;
    return Axis(u.x, u.y, u.z);
  }

  double nx() const { return n_.x; }
  double ny() const { return n_.y; }
  double nz() const { return n_.z; }
  CartesianVector vector() const { return n_; }

private:
  CartesianVector n_;
};

inline SU2Matrix su2_from_euler(const EulerAngles& a) {
  const double c = std::cos(a.theta / 2.0);
  const double s = std::sin(a.theta / 2.0);
  const double sum = (a.phi + a.psi) / 2.0;
  const double diff = (a.phi - a.psi) / 2.0;
  return {{std::polar(c, -sum), -std::polar(s, -diff), std::polar(s, diff), std::polar(c, sum)}};
}

// U = cos(angle/2) I - i sin(angle/2) (n . sigma)
inline SU2Matrix su2_from_axis(const Axis& axis, double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  const complex i(0.0, 1.0);
  const complex nz(axis.nz(), 0.0);
  const complex nxy(axis.nx(), -axis.ny());   // (n . sigma)_12
  const complex nyx(axis.nx(), axis.ny());    // (n . sigma)_21
  return {{c - i * s * nz, -i * s * nxy, -i * s * nyx, c + i * s * nz}};
}

inline bool is_special_unitary(const Matrix2c& u, double tol = algebraic_tol) {
  return max_abs_diff(adjoint(u) * u, Matrix2c::identity()) <= tol &&
         std::abs(determinant(u) - complex(1.0, 0.0)) <= tol;
}

inline CartesianVector rotate_su2(CartesianVector v, const SU2Matrix& u) {
  const Matrix2c m = qubit_to_matrix(v);
  return matrix_to_cartesian(u * m * adjoint(u));
}

// S1(phi): the first and last factor of the Euler matrix.
inline RotationMatrix3 euler_z(double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {{{c, s, 0, -s, c, 0, 0, 0, 1}}};
}

// S2(theta)
inline RotationMatrix3 euler_y(double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {{{c, 0, -s, 0, 1, 0, s, 0, c}}};
}

// S(phi, theta, psi) = S3(psi) S2(theta) S1(phi)
inline RotationMatrix3 euler_matrix(const EulerAngles& a) {
  return euler_z(a.psi) * euler_y(a.theta) * euler_z(a.phi);
}

inline bool is_rotation(const Matrix3& m, double tol = algebraic_tol) {
  return max_abs_diff(transpose(m) * m, Matrix3::identity()) <= tol &&
         std::abs(determinant(m) - 1.0) <= tol;
}

inline CartesianVector rotate_euler(CartesianVector v, const RotationMatrix3& s) { return v * s; }

// The SO(3) action of u in row convention: rotate_su2(v, u) == v * so3_action(u).
inline RotationMatrix3 so3_action(const SU2Matrix& u) {
  const CartesianVector r0 = rotate_su2({1, 0, 0}, u);
  const CartesianVector r1 = rotate_su2({0, 1, 0}, u);
  const CartesianVector r2 = rotate_su2({0, 0, 1}, u);
  return {{{r0.x, r0.y, r0.z, r1.x, r1.y, r1.z, r2.x, r2.y, r2.z}}};
}

}  // namespace blochprop
