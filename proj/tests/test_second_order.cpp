#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "reference_values.hpp"
#include "seqgamma/monte_carlo.hpp"
#include "seqgamma/second_order.hpp"

using namespace seqgamma;

TEST_CASE("expected_positive_part closed-form spot values") {
  // t = 0 collapses to the mean.
  CHECK(expected_positive_part(3.0, 0.0) == doctest::Approx(3.0).epsilon(1e-14));
  // 2 Q(3,2) - 2 Q(2,2) = 4 e^{-2}.
  CHECK(expected_positive_part(2.0, 2.0) ==
        doctest::Approx(refs::kEpp_2_2).epsilon(1e-13));
  // Deep tail vanishes under truncation.
  CHECK(expected_positive_part(4.0, 100.0) < 1e-30);
  // A heavy-cancellation point, frozen from a 40-digit evaluation.
  CHECK(expected_positive_part(8.0, 24.0) ==
        doctest::Approx(refs::kEpp_8_24).epsilon(1e-11));
}

TEST_CASE("expected_positive_part matches the quadrature oracle on the grid") {
  for (double k : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    for (double factor : {0.0, 0.5, 1.0, 1.5, 3.0}) {
      const double t = factor * k;
      const double got = expected_positive_part(k, t);
      const double want = oracles::expected_positive_part_by_quadrature(k, t);
      INFO("k=", k, " t=", t, " got=", got, " want=", want);
      CHECK(std::fabs(got - want) <= 1e-10 * std::max(std::fabs(want), 1e-300));
    }
  }
}

TEST_CASE("expected_positive_part is decreasing in the threshold") {
  for (double k : {0.5, 2.0, 8.0}) {
    double prev = expected_positive_part(k, 0.0);
    for (double t = 0.5; t <= 4.0 * k; t += 0.5) {
      const double val = expected_positive_part(k, t);
      CHECK(val <= prev + 1e-15);
      CHECK(val >= 0.0);
      prev = val;
    }
  }
}

TEST_CASE("expected_positive_part rejects invalid inputs") {
  CHECK_THROWS_AS(expected_positive_part(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(expected_positive_part(-2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(expected_positive_part(1.0, -0.5), std::domain_error);
}

TEST_CASE("second-order constants at shape 2") {
  SeriesDiagnostics diag;
  const double mean_c =
      second_order_constant({TargetKind::mean, 2.0, 1e-15}, &diag);
  CHECK(mean_c == doctest::Approx(refs::kMeanConstantAlpha2).epsilon(1e-12));
  CHECK(diag.terms_used > 50);
  CHECK(diag.tail_bound < 1e-14);

  const double var_c =
      second_order_constant({TargetKind::variance, 2.0, 1e-15}, &diag);
  CHECK(var_c == doctest::Approx(refs::kVarianceConstantAlpha2).epsilon(1e-12));
}

TEST_CASE("series value is stable under truncation tightening") {
  const double loose = second_order_constant({TargetKind::mean, 2.0, 1e-10});
  const double tight = second_order_constant({TargetKind::mean, 2.0, 1e-15});
  CHECK(std::fabs(loose - tight) < 1e-9);
}

TEST_CASE("expansion is defined only for mean and variance") {
  CHECK_THROWS_AS(second_order_constant({TargetKind::rate, 2.0, 1e-15}),
                  std::invalid_argument);
  CHECK_THROWS_AS(second_order_constant({TargetKind::survival, 2.0, 1e-15}),
                  std::invalid_argument);
  CHECK_THROWS_AS(second_order_constant({TargetKind::mean, 0.0, 1e-15}),
                  std::invalid_argument);
  CHECK_THROWS_AS(second_order_constant({TargetKind::mean, 2.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("constant agrees with simulation at moderate replication count") {
  // Sanity cross-check at n* = 1000: the simulated average difference
  // n_bar - n* should land within 4 standard errors of the series constant.
  const auto target = TargetFunction::mean(2.0);
  const SimulationPlan plan{target,
                            GammaParams{2.0, 2.0},
                            StoppingConfig{20, 0.008, 2.0, 100000000, false},
                            2000,
                            1701};
  const SimulationSummary summary = run_simulation(plan);
  const double constant = second_order_constant({TargetKind::mean, 2.0, 1e-15});
  const double se = summary.s_n / std::sqrt(static_cast<double>(plan.replications));
  CHECK(std::fabs(summary.diff_second_order - constant) < 4.0 * se);
}
