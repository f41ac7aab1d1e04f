#pragma once

// Extrema, time averages and period estimates of the closed-form
// discrepancy functions, and the built-in case studies.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "blochprop/bloch.hpp"
#include "blochprop/errors.hpp"
#include "blochprop/nelder_mead.hpp"
#include "blochprop/propagation.hpp"

namespace blochprop {

enum class Target { azimuth, elevation };
enum class Mode { max, min };

inline const char* to_string(Target t) { return t == Target::azimuth ? "azimuth" : "elevation"; }
inline const char* to_string(Mode m) { return m == Mode::max ? "max" : "min"; }

inline double component(const DeltaPair& d, Target t) { return t == Target::azimuth ? d.az : d.el; }

struct SearchOptions {
  int num_starts = 1000;
  std::uint64_t seed = 42;
  int max_evals_per_start = 2000;
  double ftol = 1e-10;
  // Upper edge of the search box [0, box)^4 for (eps_x, eps_y, eps_z, t).
  double box = two_pi;
  unsigned workers = 1;
};

struct ExtremumResult {
  Target target = Target::elevation;
  Mode mode = Mode::max;
  double value = 0.0;
  // (eps_x, eps_y, eps_z, t)
  std::array<double, 4> at{};
  CartesianVector base = default_base_vector;
  EulerAngles rates{1.0, 1.0, 1.0};
  int num_starts = 0;
  std::uint64_t seed = 0;

  ErrorAngles err() const { return {at[0], at[1], at[2]}; }
  double t() const { return at[3]; }
};

namespace detail {

inline double wrap(double x, double width) {
  const double r = std::fmod(x, width);
  const double w = r < 0.0 ? r + width : r;
  return w >= width ? 0.0 : w;
}

// Triangle wave onto [0, width].
inline double reflect(double x, double width) {
  const double r = wrap(x, 2.0 * width);
  return r > width ? 2.0 * width - r : r;
}

// Maps an unconstrained point into the search box. The error angles are
// 2pi-periodic; t is folded by the rotation period when one fits in the box.
struct BoxMap {
  double box;
  std::optional<double> t_period;

  std::array<double, 4> operator()(const std::array<double, 4>& x) const {
    std::array<double, 4> out;
    for (std::size_t i = 0; i < 3; ++i) out[i] = std::min(wrap(x[i], two_pi), std::nextafter(box, 0.0));
    if (t_period && *t_period <= box)
      out[3] = wrap(x[3], *t_period);
    else
      out[3] = std::min(reflect(x[3], box), std::nextafter(box, 0.0));
    return out;
  }
};

inline BoxMap make_box_map(const EulerAngles& rates, double box) {
  const double w = rotation_rate(rates);
  return {box, w > 0.0 ? std::optional<double>(two_pi / w) : std::nullopt};
}

inline std::mt19937_64 start_stream(std::uint64_t seed, int start) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(start), 0x9e3779b9u};
  return std::mt19937_64(seq);
}

struct StartOutcome {
  double value;
  std::array<double, 4> at;
};

}  // namespace detail

inline double evaluate_at(Target target, const std::array<double, 4>& at, const EulerAngles& rates,
                          CartesianVector base) {
  return component(delta_closed_form({at[0], at[1], at[2]}, at[3], rates, base), target);
}

// Multi-start simplex search over (eps, t) in the box. Start k draws its
// initial point from a stream seeded by (seed, k), so results do not depend
// on the worker count, and the first N starts of a larger run are the N
// starts of a smaller one.
inline ExtremumResult find_extremum(Target target, Mode mode, CartesianVector base, const EulerAngles& rates,
                                    const SearchOptions& opts = {}) {
  if (opts.num_starts < 1) throw std::invalid_argument("find_extremum: num_starts must be >= 1");
  require_unit(base, "find_extremum: base vector");
  const detail::BoxMap to_box = detail::make_box_map(rates, opts.box);
  const double sign = mode == Mode::max ? -1.0 : 1.0;
  const NelderMeadOptions nm{0.5, opts.ftol, opts.max_evals_per_start};

  std::vector<std::optional<detail::StartOutcome>> outcomes(static_cast<std::size_t>(opts.num_starts));
  auto run_start = [&](int k) {
    std::mt19937_64 rng = detail::start_stream(opts.seed, k);
    std::uniform_real_distribution<double> uni(0.0, opts.box);
    std::array<double, 4> x0;
    for (double& xi : x0) xi = uni(rng);
    auto objective = [&](const std::array<double, 4>& x) { return sign * evaluate_at(target, to_box(x), rates, base); };
    const NelderMeadResult<4> r = nelder_mead(objective, x0, nm);
    const std::array<double, 4> at = to_box(r.x);
    const double value = evaluate_at(target, at, rates, base);
    if (std::isfinite(value)) outcomes[static_cast<std::size_t>(k)] = detail::StartOutcome{value, at};
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(opts.num_starts)));
  if (workers == 1) {
    for (int k = 0; k < opts.num_starts; ++k) run_start(k);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int k = static_cast<int>(w); k < opts.num_starts; k += static_cast<int>(workers)) run_start(k);
      });
  }

  ExtremumResult best{target, mode, mode == Mode::max ? -1.0 : std::numeric_limits<double>::infinity(),
                      {}, base, rates, opts.num_starts, opts.seed};
  for (const auto& o : outcomes) {
    if (!o) continue;
    if (sign * o->value < sign * best.value) {
      best.value = o->value;
      best.at = o->at;
    }
  }
  return best;
}

inline ExtremumResult find_extremum(Target target, Mode mode, CartesianVector base, const SearchOptions& opts = {}) {
  return find_extremum(target, mode, base, EulerAngles{1.0, 1.0, 1.0}, opts);
}

// Mean of the discrepancy over one rotation period, by adaptive
// Gauss-Kronrod (15 point) on a fixed partition of the period.
inline double time_averaged_error(Target target, const ErrorAngles& err, const EulerAngles& rates,
                                  CartesianVector base = default_base_vector, double abs_tol = 1e-8) {
  const double T = period(rates);
  constexpr int panels = 32;
  // The error bound is relative to the L1 norm, which is at most pi * T.
  const double rel_tol = abs_tol / (pi * T);
  auto f = [&](double t) { return component(delta_closed_form(err, t, rates, base), target); };
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = T * p / panels;
    const double b = T * (p + 1) / panels;
    total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 20, rel_tol);
  }
  return total / T;
}

struct PeriodEstimate {
  double value = 0.0;
  // The signal is constant; value is the analytic period.
  bool degenerate = false;
};

// Smallest shift c with max_t |D(t) - D(t + c)| < 1e-6 on a dense grid. The
// candidates are T/k (k = 8..2) and k T (k = 1..9) around the analytic period
// T; each is refined by golden-section search on the mismatch.
inline PeriodEstimate estimate_period_numeric(Target target, const ErrorAngles& err, const EulerAngles& rates,
                                              CartesianVector base = default_base_vector) {
  const double T = period(rates);
  constexpr int grid = 2000;
  constexpr double accept = 1e-6;
  auto f = [&](double t) { return component(delta_closed_form(err, t, rates, base), target); };

  std::vector<double> ts(grid), fs(grid);
  for (int j = 0; j < grid; ++j) {
    ts[j] = 2.0 * T * j / grid;
    fs[j] = f(ts[j]);
  }
  const auto [lo, hi] = std::minmax_element(fs.begin(), fs.end());
  if (*hi - *lo < 1e-12) return {T, true};

  auto mismatch = [&](double c) {
    double m = 0.0;
    for (int j = 0; j < grid; ++j) m = std::max(m, std::abs(fs[j] - f(ts[j] + c)));
    return m;
  };

  std::vector<double> candidates;
  for (int k = 8; k >= 2; --k) candidates.push_back(T / k);
  for (int k = 1; k <= 9; ++k) candidates.push_back(k * T);

  for (const double c0 : candidates) {
    double best_c = c0, best_m = mismatch(c0);
    if (best_m > 0.05) continue;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = c0 * (1.0 - 1e-3), b = c0 * (1.0 + 1e-3);
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double m1 = mismatch(x1), m2 = mismatch(x2);
    for (int it = 0; it < 80 && b - a > 1e-15 * c0; ++it) {
      if (m1 < m2) {
        b = x2;
        x2 = x1;
        m2 = m1;
        x1 = b - g * (b - a);
        m1 = mismatch(x1);
      } else {
        a = x1;
        x1 = x2;
        m1 = m2;
        x2 = a + g * (b - a);
        m2 = mismatch(x2);
      }
      if (m1 < best_m) best_m = m1, best_c = x1;
      if (m2 < best_m) best_m = m2, best_c = x2;
    }
    if (best_m < accept) return {best_c, false};
  }
  throw estimation_failure("estimate_period_numeric: no period found below 10 T");
}

struct CaseSpec {
  std::string label;
  // Ratio triple as stated, in (psi, theta, phi) order.
  std::array<double, 3> stated;
  std::string stated_period_expr;
  double stated_period = 0.0;
  double reference_max_elevation = 0.0;
  EulerAngles rates;
  // True when the stated (psi, theta, phi) order already yields the stated period.
  bool literal_assignment = true;
  CartesianVector base = default_base_vector;
  ErrorAngles probe_err{0.0, 0.2, 0.0};
  double err_box = two_pi;
};

// The permutation of `stated` (psi, theta, phi) whose period equals
// `target_period`, trying the stated order first.
inline std::optional<EulerAngles> assign_rates(const std::array<double, 3>& stated, double target_period,
                                               bool* literal = nullptr) {
  std::array<int, 3> idx{0, 1, 2};
  do {
    const EulerAngles a{stated[idx[2]], stated[idx[1]], stated[idx[0]]};
    if (rotation_rate(a) > 0.0 && std::abs(period(a) - target_period) <= 1e-12 * target_period) {
      if (literal) *literal = idx == std::array<int, 3>{0, 1, 2};
      return a;
    }
  } while (std::next_permutation(idx.begin(), idx.end()));
  return std::nullopt;
}

inline CaseSpec make_case(std::string label, std::array<double, 3> stated, std::string period_expr, double period_value,
                          double reference_max_el) {
  CaseSpec c;
  c.label = std::move(label);
  c.stated = stated;
  c.stated_period_expr = std::move(period_expr);
  c.stated_period = period_value;
  c.reference_max_elevation = reference_max_el;
  bool literal = false;
  const std::optional<EulerAngles> a = assign_rates(stated, period_value, &literal);
  if (!a) throw std::logic_error("make_case: no angle assignment reproduces the period of " + c.label);
  c.rates = *a;
  c.literal_assignment = literal;
  return c;
}

// The seven rotation-rate configurations: rational ratios, two equal angles
// with rational ratio, irrational ratios, two equal angles with irrational ratio.
inline std::vector<CaseSpec> builtin_cases() {
  const double e = std::exp(1.0);
  return {
      make_case("case1-sub1", {1, 2, 3}, "sqrt(2/13)*pi", std::sqrt(2.0 / 13.0) * pi, 1.76818818822050),
      make_case("case1-sub2", {3, 2, 1}, "sqrt(2)*pi/3", std::sqrt(2.0) * pi / 3.0, 2.35590586664925),
      make_case("case2-sub1", {1, 1, 2}, "sqrt(2/5)*pi", std::sqrt(2.0 / 5.0) * pi, 1.57079632670986),
      make_case("case2-sub2", {2, 1, 1}, "pi/sqrt(2)", pi / std::sqrt(2.0), 2.35619448416057),
      make_case("case3", {3, e, pi}, "2pi/sqrt(pi^2+(e+3)^2)", two_pi / std::sqrt(pi * pi + (e + 3) * (e + 3)),
                2.07317454885058),
      make_case("case4-sub1", {1, 1, pi}, "2pi/sqrt(1+(pi+1)^2)", two_pi / std::sqrt(1 + (pi + 1) * (pi + 1)),
                1.80771464098098),
      make_case("case4-sub2", {pi, 1, 1}, "2pi/sqrt(pi^2+4)", two_pi / std::sqrt(pi * pi + 4), 2.57468030909556),
  };
}

struct CaseReport {
  CaseSpec spec;
  double analytic_period = 0.0;
  double numeric_period = 0.0;
  ExtremumResult max_az, max_el, min_az, min_el;
  // One period of the probe-error discrepancy curves.
  ErrorSeries series;
};

inline CaseReport run_case_study(const CaseSpec& spec, SearchOptions opts = {}, std::size_t series_points = 400) {
  opts.box = spec.err_box;
  CaseReport r;
  r.spec = spec;
  r.analytic_period = period(spec.rates);
  r.numeric_period = estimate_period_numeric(Target::elevation, spec.probe_err, spec.rates, spec.base).value;
  r.max_az = find_extremum(Target::azimuth, Mode::max, spec.base, spec.rates, opts);
  r.max_el = find_extremum(Target::elevation, Mode::max, spec.base, spec.rates, opts);
  r.min_az = find_extremum(Target::azimuth, Mode::min, spec.base, spec.rates, opts);
  r.min_el = find_extremum(Target::elevation, Mode::min, spec.base, spec.rates, opts);
  r.series = sample_closed_form(spec.probe_err, spec.rates, 0.0, r.analytic_period, series_points, spec.base);
  return r;
}

}  // namespace blochprop
