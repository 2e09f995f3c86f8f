#include "seqgamma/sequential_engine.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace seqgamma {

double SequentialState::beta_hat(double alpha) const {
  if (count < 1) {
    throw std::logic_error("beta_hat undefined before the first observation");
  }
  return sum / (static_cast<double>(count) * alpha);
}

SequentialState new_state(const TargetFunction& target, const StoppingConfig& config) {
  if (config.alpha != target.alpha()) {
    throw std::invalid_argument("config shape " + std::to_string(config.alpha) +
                                " does not match target shape " +
                                std::to_string(target.alpha()));
  }
  if (!(std::isfinite(config.variance_bound) && config.variance_bound > 0.0)) {
    throw std::invalid_argument("variance bound must be finite and positive, got " +
                                std::to_string(config.variance_bound));
  }
  const int floor = target.min_pilot_size();
  if (config.pilot_size < floor) {
    throw std::invalid_argument(
        "pilot size " + std::to_string(config.pilot_size) + " is below the minimum " +
        std::to_string(floor) + " required for the " + std::string(target_name(target.kind())) +
        " target at shape " + std::to_string(target.alpha()));
  }
  if (config.cap < config.pilot_size) {
    throw std::invalid_argument("cap " + std::to_string(config.cap) +
                                " is smaller than the pilot size " +
                                std::to_string(config.pilot_size));
  }
  return SequentialState{};
}

void observe(SequentialState& state, double x, const TargetFunction& target,
             const StoppingConfig& config) {
  if (state.stopped) {
    throw std::logic_error("observe called on a stopped run");
  }
  if (!(std::isfinite(x) && x > 0.0)) {
    throw std::domain_error("observations must be positive, got " + std::to_string(x));
  }
  if (config.compensated_sum) {
    const double y = x - state.carry;
    const double t = state.sum + y;
    state.carry = (t - state.sum) - y;
    state.sum = t;
  } else {
    state.sum += x;
  }
  ++state.count;

  if (state.count >= config.pilot_size) {
    const double boundary =
        target.stopping_boundary(state.beta_hat(config.alpha), config.variance_bound);
    if (static_cast<double>(state.count) >= boundary) {
      state.stopped = true;
      state.boundary_at_stop = boundary;
      return;
    }
  }
  if (state.count >= config.cap) {
    state.stopped = true;
    state.stopped_by_cap = true;
    state.boundary_at_stop =
        target.stopping_boundary(state.beta_hat(config.alpha), config.variance_bound);
  }
}

EstimateResult finalize(const SequentialState& state, const TargetFunction& target,
                        const StoppingConfig& config) {
  if (!state.stopped) {
    throw std::logic_error("finalize called on a run that has not stopped");
  }
  EstimateResult result;
  result.terminal_n = state.count;
  result.beta_hat = state.beta_hat(config.alpha);
  result.g_estimate = target.value(result.beta_hat);
  result.stopped_by_cap = state.stopped_by_cap;
  return result;
}

}  // namespace seqgamma
