#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace blochprop {

struct NelderMeadOptions {
  double initial_step = 0.5;
  // Stop once max f - min f over the simplex falls to this.
  double ftol = 1e-10;
  int max_evals = 2000;
};

template <std::size_t N>
struct NelderMeadResult {
  std::array<double, N> x{};
  double fx = 0.0;
  int evals = 0;
  bool converged = false;
};

// Minimizes f: array<double, N> -> double with the classic simplex method
// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
template <std::size_t N, class F>
NelderMeadResult<N> nelder_mead(F&& f, const std::array<double, N>& x0, const NelderMeadOptions& opts = {}) {
  using Point = std::array<double, N>;
  std::array<Point, N + 1> simplex;
  std::array<double, N + 1> fv;
  int evals = 0;
  auto eval = [&](const Point& p) {
    ++evals;
    return f(p);
  };

  simplex[0] = x0;
  for (std::size_t i = 0; i < N; ++i) {
    simplex[i + 1] = x0;
    simplex[i + 1][i] += opts.initial_step;
  }
  for (std::size_t i = 0; i <= N; ++i) fv[i] = eval(simplex[i]);

  std::array<std::size_t, N + 1> order;
  bool converged = false;
  while (true) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[N - 1];

    if (std::abs(fv[worst] - fv[best]) <= opts.ftol) {
      converged = true;
      break;
    }
    if (evals >= opts.max_evals) break;

    Point centroid{};
    for (std::size_t i = 0; i <= N; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < N; ++d) centroid[d] += simplex[i][d] / static_cast<double>(N);
    }
    auto along = [&](double coef) {
      Point p;
      for (std::size_t d = 0; d < N; ++d) p[d] = centroid[d] + coef * (simplex[worst][d] - centroid[d]);
      return p;
    };

    const Point xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < fv[best]) {
      const Point xe = along(-2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        fv[worst] = fe;
      } else {
        simplex[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      simplex[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    // Outside contraction if the reflection beat the worst point, inside otherwise.
    const bool outside = fr < fv[worst];
    const Point xc = along(outside ? -0.5 : 0.5);
    const double fc = eval(xc);
    if (fc < (outside ? fr : fv[worst])) {
      simplex[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= N; ++i) {
      if (i == best) continue;
      for (std::size_t d = 0; d < N; ++d) simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
      fv[i] = eval(simplex[i]);
    }
  }

  const std::size_t best =
      static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  return {simplex[best], fv[best], evals, converged};
}

}  // namespace blochprop
