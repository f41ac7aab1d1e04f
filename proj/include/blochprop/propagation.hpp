#pragma once

// Error propagation: the azimuth/elevation discrepancy between a clean and a
// perturbed qubit that are rotated synchronously, computed either by
// iterating a finite Euler step or in closed form through the one-parameter
// rotation group generated by repeated infinitesimal Euler rotations.
//
// Convention. sp_general(t, a) is exp(t J(a)) with
//
//       | 0          -(phi+psi)  theta |
//   J = | phi+psi     0          0     |
//       | -theta      0          0     |
//
// which is the limit of (S(a t / s)^T)^s, the Euler matrix in column
// convention. Row vectors rotated by the Euler pipeline, v S(a t/s)^s, follow
// the transposed flow v sp_general(t, a)^T. flow_matrix() is that transpose
// and is what every discrepancy function in this file applies.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blochprop/bloch.hpp"
#include "blochprop/errors.hpp"
#include "blochprop/matrix.hpp"
#include "blochprop/rotations.hpp"

namespace blochprop {

// Error offset applied to the base vector, v_err = v S(eps_x, eps_y, eps_z).
struct ErrorAngles {
  double eps_x = 0.0;
  double eps_y = 0.0;
  double eps_z = 0.0;

  constexpr EulerAngles as_euler() const { return {eps_x, eps_y, eps_z}; }
};

struct DeltaPair {
  double az = 0.0;
  double el = 0.0;
};

struct ErrorSample {
  double t = 0.0;
  double delta_az = 0.0;
  double delta_el = 0.0;
};

struct ErrorSeries {
  std::vector<ErrorSample> samples;
};

// Antisymmetric 3x3 matrix.
struct Generator3 : Matrix3 {
  // (a, b, c) with J = [[0,-c,b],[c,0,-a],[-b,a,0]].
  constexpr CartesianVector axis_vector() const { return {(*this)(2, 1), (*this)(0, 2), (*this)(1, 0)}; }

  static constexpr Generator3 from_axis_vector(CartesianVector w) {
    return {{{0.0, -w.z, w.y, w.z, 0.0, -w.x, -w.y, w.x, 0.0}}};
  }
};

inline bool is_antisymmetric(const Matrix3& m, double tol = algebraic_tol) {
  return max_abs_diff(m, -1.0 * transpose(m)) <= tol;
}

enum class Pipeline { su2, euler, closed };

inline const char* to_string(Pipeline p) {
  switch (p) {
    case Pipeline::su2: return "su2";
    case Pipeline::euler: return "euler";
    case Pipeline::closed: return "closed";
  }
  return "?";
}

inline constexpr CartesianVector default_base_vector{1.0, 0.0, 0.0};

namespace detail {

// sin(x)/x
inline double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

// sin(w t)/w and (1 - cos(w t))/w^2, both finite at w = 0.
struct FlowCoefficients {
  double cos_wt;
  double sin_over_w;
  double one_minus_cos_over_w2;
};

inline FlowCoefficients flow_coefficients(double w, double t) {
  const double half = sinc(0.5 * w * t);
  return {std::cos(w * t), t * sinc(w * t), 0.5 * t * t * half * half};
}

}  // namespace detail

inline double rotation_rate(const EulerAngles& a) { return std::hypot(a.theta, a.phi + a.psi); }

inline DeltaPair delta_pair(CartesianVector w, CartesianVector w_err) {
  if (!(norm(w) > 0.0) || !(norm(w_err) > 0.0)) throw norm_violation("delta_pair: zero vector");
  const SphericalCoords s = cartesian_to_spherical(w);
  const SphericalCoords e = cartesian_to_spherical(w_err);
  return {angle_distance(e.phi_az, s.phi_az), angle_distance(e.theta_el, s.theta_el)};
}

// The closed-form limit matrix exp(t J(a)), evaluated with real trigonometry.
inline RotationMatrix3 sp_general(double t, const EulerAngles& a) {
  const double th = a.theta;
  const double k = a.phi + a.psi;
  const auto [c, s, q] = detail::flow_coefficients(rotation_rate(a), t);
  return {{{c, -k * s, th * s,
            k * s, 1.0 - k * k * q, th * k * q,
            -th * s, th * k * q, 1.0 - th * th * q}}};
}

// sp_general(t, (1, 1, 1)) written out with sqrt(5).
inline RotationMatrix3 sp_special(double t) {
  const double r5 = std::sqrt(5.0);
  const double c = std::cos(r5 * t);
  const double s = std::sin(r5 * t);
  return {{{c, -2.0 * s / r5, s / r5,
            2.0 * s / r5, (4.0 * c + 1.0) / 5.0, -2.0 * (c - 1.0) / 5.0,
            -s / r5, -2.0 * (c - 1.0) / 5.0, (c + 4.0) / 5.0}}};
}

// Row-convention flow: v * flow_matrix(t, a) = lim v * S(a t / s)^s.
inline RotationMatrix3 flow_matrix(double t, const EulerAngles& a) { return transpose(sp_general(t, a)); }

// Frobenius distance between the s-fold Euler matrix power and its limit.
inline double limit_convergence_check(double t, const EulerAngles& a, std::uint64_t s) {
  if (s < 1) throw std::invalid_argument("limit_convergence_check: s must be >= 1");
  const RotationMatrix3 step = euler_matrix((t / static_cast<double>(s)) * a);
  return frobenius_norm(power(step, s) - flow_matrix(t, a));
}

inline Generator3 generator(const EulerAngles& a) {
  const double k = a.phi + a.psi;
  return {{{0.0, -k, a.theta, k, 0.0, 0.0, -a.theta, 0.0, 0.0}}};
}

inline std::array<complex, 3> generator_eigenvalues(const EulerAngles& a) {
  const double w = rotation_rate(a);
  return {complex(0.0, 0.0), complex(0.0, w), complex(0.0, -w)};
}

inline double period(const EulerAngles& a) {
  const double w = rotation_rate(a);
  if (!(w > 0.0)) throw degenerate_rotation("period: theta = 0 and phi + psi = 0, the rotation does not advance");
  return two_pi / w;
}

// exp(t J) for antisymmetric J (Rodrigues).
inline RotationMatrix3 matrix_exp_generator(const Generator3& j, double t) {
  if (!is_antisymmetric(j)) throw std::invalid_argument("matrix_exp_generator: generator is not antisymmetric");
  const detail::FlowCoefficients k = detail::flow_coefficients(norm(j.axis_vector()), t);
  return {Matrix3::identity() + k.sin_over_w * j + k.one_minus_cos_over_w2 * (j * j)};
}

// Principal logarithm of a rotation matrix: exp(rotation_log(r)) == r.
inline Generator3 rotation_log(const Matrix3& r) {
  const CartesianVector skew{(r(2, 1) - r(1, 2)) / 2.0, (r(0, 2) - r(2, 0)) / 2.0, (r(1, 0) - r(0, 1)) / 2.0};
  const double sin_a = norm(skew);
  const double cos_a = std::clamp((trace(r) - 1.0) / 2.0, -1.0, 1.0);
  const double angle = std::atan2(sin_a, cos_a);
  if (angle < 1e-3 || sin_a > 1e-6) {
    return Generator3::from_axis_vector((1.0 / detail::sinc(angle)) * skew);
  }
  // angle close to pi: the axis comes from the symmetric part, (1 - cos a) n n^T.
  const Matrix3 sym = 0.5 * (r + transpose(r)) - cos_a * Matrix3::identity();
  std::size_t col = 0;
  for (std::size_t k = 1; k < 3; ++k)
    if (sym(k, k) > sym(col, col)) col = k;
  CartesianVector n{sym(0, col), sym(1, col), sym(2, col)};
  n = (1.0 / norm(n)) * n;
  if (dot(n, skew) < 0.0) n = -1.0 * n;
  return Generator3::from_axis_vector(angle * n);
}

// Generator of the one-parameter group through a finite Euler step:
// euler_matrix(step)^i == transpose(matrix_exp_generator(step_generator(step), i)).
inline Generator3 step_generator(const EulerAngles& step) {
  return rotation_log(transpose(euler_matrix(step)));
}

// Rates (phi, theta, psi) with generator(rates) == j, when j has that form
// (zero rotation about x). phi and psi are split evenly.
inline std::optional<EulerAngles> rates_from_generator(const Generator3& j, double tol = algebraic_tol) {
  if (!is_antisymmetric(j, tol) || std::abs(j(2, 1)) > tol) return std::nullopt;
  const double k = j(1, 0);
  return EulerAngles{k / 2.0, j(0, 2), k / 2.0};
}

inline void require_simulation_inputs(CartesianVector v, CartesianVector v_err) {
  if (!is_finite(v) || !is_finite(v_err)) throw norm_violation("simulate: non-finite vector");
  require_unit(v, "simulate: v");
  require_unit(v_err, "simulate: v_err");
}

// Sample i holds the discrepancy after i synchronous applications of `step`.
inline ErrorSeries simulate(CartesianVector v, CartesianVector v_err, const EulerAngles& step, std::int64_t steps,
                            Pipeline pipeline = Pipeline::euler) {
  if (steps < 0) throw std::invalid_argument("simulate: steps must be >= 0");
  require_simulation_inputs(v, v_err);
  ErrorSeries out;
  out.samples.reserve(static_cast<std::size_t>(steps) + 1);
  auto record = [&](std::int64_t i, CartesianVector w, CartesianVector w_err) {
    const DeltaPair d = delta_pair(w, w_err);
    out.samples.push_back({static_cast<double>(i), d.az, d.el});
  };

  switch (pipeline) {
    case Pipeline::euler: {
      const RotationMatrix3 s = euler_matrix(step);
      CartesianVector w = v, w_err = v_err;
      for (std::int64_t i = 0; i <= steps; ++i) {
        record(i, w, w_err);
        w = rotate_euler(w, s);
        w_err = rotate_euler(w_err, s);
      }
      break;
    }
    case Pipeline::su2: {
      const SU2Matrix u = su2_from_euler(step);
      CartesianVector w = v, w_err = v_err;
      for (std::int64_t i = 0; i <= steps; ++i) {
        record(i, w, w_err);
        w = rotate_su2(w, u);
        w_err = rotate_su2(w_err, u);
      }
      break;
    }
    case Pipeline::closed: {
      const Generator3 j = step_generator(step);
      for (std::int64_t i = 0; i <= steps; ++i) {
        const RotationMatrix3 f = transpose(matrix_exp_generator(j, static_cast<double>(i)));
        record(i, v * f, v_err * f);
      }
      break;
    }
  }
  return out;
}

// Discrepancy at continuous time t between base and base * S(err), both
// carried by the flow of `rates`.
inline DeltaPair delta_closed_form(const ErrorAngles& err, double t, const EulerAngles& rates,
                                   CartesianVector base = default_base_vector) {
  const RotationMatrix3 f = flow_matrix(t, rates);
  const CartesianVector v_err = base * euler_matrix(err.as_euler());
  return delta_pair(base * f, v_err * f);
}

// n + 1 evenly spaced closed-form samples on [t0, t1].
inline ErrorSeries sample_closed_form(const ErrorAngles& err, const EulerAngles& rates, double t0, double t1,
                                      std::size_t n, CartesianVector base = default_base_vector) {
  ErrorSeries out;
  out.samples.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = n == 0 ? t0 : t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n);
    const DeltaPair d = delta_closed_form(err, t, rates, base);
    out.samples.push_back({t, d.az, d.el});
  }
  return out;
}

}  // namespace blochprop
