#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "blochprop/analysis.hpp"
#include "oracles.hpp"

using namespace blochprop;

namespace {

const EulerAngles ones{1, 1, 1};

SearchOptions quick(int starts = 200, std::uint64_t seed = 7) {
  SearchOptions o;
  o.num_starts = starts;
  o.seed = seed;
  return o;
}

}  // namespace

TEST(NelderMead, Quadratic) {
  auto f = [](const std::array<double, 2>& x) { return (x[0] - 1) * (x[0] - 1) + 3 * (x[1] + 2) * (x[1] + 2); };
  const auto r = nelder_mead<2>(f, {0.0, 0.0}, {0.5, 1e-16, 5000});
  EXPECT_NEAR(r.x[0], 1.0, 1e-6);
  EXPECT_NEAR(r.x[1], -2.0, 1e-6);
  EXPECT_LT(r.fx, 1e-12);
}

TEST(NelderMead, Rosenbrock) {
  auto f = [](const std::array<double, 2>& x) {
    return 100 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]) + (1 - x[0]) * (1 - x[0]);
  };
  const auto r = nelder_mead<2>(f, {-1.2, 1.0}, {0.5, 1e-20, 20000});
  EXPECT_NEAR(r.x[0], 1.0, 1e-4);
  EXPECT_NEAR(r.x[1], 1.0, 1e-4);
}

TEST(Extrema, BaseXMatchesReferenceValues) {
  const CartesianVector base{1, 0, 0};
  EXPECT_NEAR(find_extremum(Target::elevation, Mode::max, base).value, 2.0344424161175363, 1e-3);
  EXPECT_NEAR(find_extremum(Target::azimuth, Mode::max, base).value, pi, 1e-6);
  EXPECT_LE(find_extremum(Target::elevation, Mode::min, base).value, 1e-6);
  EXPECT_LE(find_extremum(Target::azimuth, Mode::min, base).value, 1e-6);
}

TEST(Extrema, BaseZMatchesReferenceValues) {
  const CartesianVector base{0, 0, 1};
  EXPECT_NEAR(find_extremum(Target::elevation, Mode::max, base).value, pi, 1e-3);
  EXPECT_NEAR(find_extremum(Target::azimuth, Mode::max, base).value, pi, 1e-3);
  EXPECT_LE(find_extremum(Target::elevation, Mode::min, base).value, 1e-6);
  EXPECT_LE(find_extremum(Target::azimuth, Mode::min, base).value, 1e-6);
}

TEST(Extrema, DeterministicForSeed) {
  const CartesianVector base{1, 0, 0};
  const ExtremumResult a = find_extremum(Target::elevation, Mode::max, base, ones, quick());
  const ExtremumResult b = find_extremum(Target::elevation, Mode::max, base, ones, quick());
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.at, b.at);
}

TEST(Extrema, WorkersDoNotChangeResult) {
  const CartesianVector base{1, 0, 0};
  SearchOptions par = quick();
  par.workers = 3;
  const ExtremumResult a = find_extremum(Target::azimuth, Mode::max, base, ones, quick());
  const ExtremumResult b = find_extremum(Target::azimuth, Mode::max, base, ones, par);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.at, b.at);
}

TEST(Extrema, MoreStartsNeverWorse) {
  // Start k uses the same stream regardless of the total count.
  const CartesianVector base{1, 0, 0};
  for (int n : {10, 40, 160}) {
    const double few = find_extremum(Target::elevation, Mode::max, base, ones, quick(n)).value;
    const double many = find_extremum(Target::elevation, Mode::max, base, ones, quick(2 * n)).value;
    EXPECT_GE(many, few);
    const double few_min = find_extremum(Target::elevation, Mode::min, base, ones, quick(n)).value;
    const double many_min = find_extremum(Target::elevation, Mode::min, base, ones, quick(2 * n)).value;
    EXPECT_LE(many_min, few_min);
  }
}

TEST(Extrema, ReportedValueIsAttained) {
  std::mt19937_64 rng(40);
  for (int i = 0; i < 5; ++i) {
    const CartesianVector base = oracle::random_unit(rng);
    for (Target target : {Target::azimuth, Target::elevation}) {
      for (Mode mode : {Mode::max, Mode::min}) {
        const ExtremumResult r = find_extremum(target, mode, base, ones, quick(20, i));
        const DeltaPair d = delta_closed_form(r.err(), r.t(), ones, base);
        ASSERT_NEAR(component(d, target), r.value, 1e-10);
        for (double x : r.at) {
          ASSERT_GE(x, 0.0);
          ASSERT_LT(x, two_pi);
        }
      }
    }
  }
}

TEST(Extrema, RejectsBadOptions) {
  SearchOptions o = quick();
  o.num_starts = 0;
  EXPECT_THROW(find_extremum(Target::azimuth, Mode::max, {1, 0, 0}, ones, o), std::invalid_argument);
  EXPECT_THROW(find_extremum(Target::azimuth, Mode::max, {1, 1, 0}, ones, quick()), norm_violation);
}

TEST(TimeAverage, ZeroErrorIsZero) {
  EXPECT_EQ(time_averaged_error(Target::elevation, {0, 0, 0}, ones), 0.0);
  EXPECT_EQ(time_averaged_error(Target::azimuth, {0, 0, 0}, ones), 0.0);
}

TEST(TimeAverage, MatchesMidpointOracle) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 3; ++i) {
    const auto e = oracle::random_angles(rng);
    const ErrorAngles err{e[0], e[1], e[2]};
    const EulerAngles rates{e[1], e[2], e[0]};
    const double T = period(rates);
    for (Target target : {Target::azimuth, Target::elevation}) {
      const double ref =
          oracle::midpoint([&](double t) { return component(delta_closed_form(err, t, rates), target); }, 0.0, T,
                           1000000) /
          T;
      ASSERT_NEAR(time_averaged_error(target, err, rates), ref, 1e-6);
    }
  }
}

TEST(TimeAverage, BelowSampledMaximum) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 50; ++i) {
    const auto e = oracle::random_angles(rng);
    const ErrorAngles err{e[0], e[1], e[2]};
    const ErrorSeries s = sample_closed_form(err, ones, 0.0, period(ones), 2000);
    double max_az = 0, max_el = 0;
    for (const ErrorSample& x : s.samples) max_az = std::max(max_az, x.delta_az), max_el = std::max(max_el, x.delta_el);
    ASSERT_LE(time_averaged_error(Target::azimuth, err, ones), max_az + 1e-9);
    ASSERT_LE(time_averaged_error(Target::elevation, err, ones), max_el + 1e-9);
  }
}

TEST(TimeAverage, ProbeValue) {
  EXPECT_NEAR(time_averaged_error(Target::elevation, {0, 0.2, 0}, ones), 0.168709022465, 1e-9);
}

TEST(NumericPeriod, MatchesAnalytic) {
  const PeriodEstimate p = estimate_period_numeric(Target::elevation, {0, 0.2, 0}, ones);
  EXPECT_FALSE(p.degenerate);
  EXPECT_NEAR(p.value, period(ones), 1e-6 * period(ones));
  const PeriodEstimate q = estimate_period_numeric(Target::azimuth, {0.4, 0.3, 0.2}, ones);
  EXPECT_NEAR(q.value, period(ones), 1e-6 * period(ones));
}

TEST(NumericPeriod, IrrationalRates) {
  const double e = std::exp(1.0);
  const EulerAngles rates{e, pi, 3};
  const PeriodEstimate p = estimate_period_numeric(Target::elevation, {0, 0.2, 0}, rates);
  EXPECT_NEAR(p.value, period(rates), 1e-6 * period(rates));
}

TEST(NumericPeriod, ConstantSignalIsDegenerate) {
  const PeriodEstimate p = estimate_period_numeric(Target::elevation, {0, 0, 0}, ones);
  EXPECT_TRUE(p.degenerate);
  EXPECT_EQ(p.value, period(ones));
}

TEST(Cases, AssignmentReproducesStatedPeriods) {
  const auto cases = builtin_cases();
  ASSERT_EQ(cases.size(), 7u);
  for (const CaseSpec& c : cases) EXPECT_NEAR(period(c.rates), c.stated_period, 1e-12 * c.stated_period) << c.label;
  const double e = std::exp(1.0);
  EXPECT_EQ(cases[4].label, "case3");
  EXPECT_EQ(cases[4].rates, (EulerAngles{e, pi, 3}));
  EXPECT_FALSE(cases[4].literal_assignment);
  EXPECT_TRUE(cases[2].literal_assignment);
}

TEST(Cases, AssignRatesFailsWhenNoPermutationFits) {
  EXPECT_FALSE(assign_rates({1, 2, 3}, 1.0).has_value());
}

TEST(Cases, StudyReportIsConsistent) {
  const CaseSpec c = builtin_cases()[3];
  const CaseReport r = run_case_study(c, quick(50), 100);
  EXPECT_NEAR(r.analytic_period, c.stated_period, 1e-12);
  EXPECT_NEAR(r.numeric_period, r.analytic_period, 1e-6 * r.analytic_period);
  EXPECT_EQ(r.series.samples.size(), 101u);
  EXPECT_LE(r.min_el.value, r.max_el.value);
  EXPECT_LE(r.min_az.value, r.max_az.value);
}
