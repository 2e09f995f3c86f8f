#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "seqgamma/target_functions.hpp"

namespace seqgamma {

struct StoppingConfig {
  int pilot_size = 1;            // minimum observations before the rule is consulted
  double variance_bound = 1.0;   // b: prescribed bound on Var g(beta_hat_N)
  double alpha = 1.0;            // known shape of the sampled gamma
  long long cap = 100000000;     // runaway guard on the stopped sample size
  bool compensated_sum = false;  // Kahan accumulation for very long streams
};

struct SequentialState {
  long long count = 0;  // observations consumed
  double sum = 0.0;     // running sum of observations
  double carry = 0.0;   // Kahan compensation term (zero unless enabled)
  bool stopped = false;
  bool stopped_by_cap = false;
  std::optional<double> boundary_at_stop;

  // MLE of the scale after `count` observations; requires count >= 1.
  double beta_hat(double alpha) const;
};

struct EstimateResult {
  long long terminal_n = 0;
  double beta_hat = 0.0;
  double g_estimate = 0.0;
  bool stopped_by_cap = false;
};

// A finished run, or — when a finite source dries up before the rule fires —
// the state mid-stream so callers can report how far it got.
struct RunOutcome {
  std::optional<EstimateResult> result;
  SequentialState state;

  bool exhausted() const { return !result.has_value(); }
};

// Validates config against the target (pilot-size floor, positive bound,
// cap >= pilot) and returns a fresh state. Throws std::invalid_argument.
SequentialState new_state(const TargetFunction& target, const StoppingConfig& config);

// Consume one observation, update the running estimate, and evaluate the
// stopping rule once the pilot is complete. Throws std::logic_error if the
// run already stopped and std::domain_error on x <= 0.
void observe(SequentialState& state, double x, const TargetFunction& target,
             const StoppingConfig& config);

// Terminal estimate for a stopped state.
EstimateResult finalize(const SequentialState& state, const TargetFunction& target,
                        const StoppingConfig& config);

// Drive the rule from a source until it stops or the source is exhausted.
// Source: callable returning std::optional<double> (nullopt = exhausted).
template <typename Source>
RunOutcome run_to_completion(const TargetFunction& target, const StoppingConfig& config,
                             Source&& source) {
  SequentialState state = new_state(target, config);
  while (!state.stopped) {
    std::optional<double> x = source();
    if (!x.has_value()) {
      return RunOutcome{std::nullopt, std::move(state)};
    }
    observe(state, *x, target, config);
  }
  EstimateResult result = finalize(state, target, config);
  return RunOutcome{std::move(result), std::move(state)};
}

}  // namespace seqgamma
