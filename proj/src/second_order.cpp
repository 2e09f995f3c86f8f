#include "seqgamma/second_order.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "seqgamma/gamma_core.hpp"

namespace seqgamma {

double expected_positive_part(double shape, double threshold) {
  if (!(std::isfinite(shape) && shape > 0.0)) {
    throw std::domain_error("expected_positive_part requires shape > 0, got " +
                            std::to_string(shape));
  }
  if (!(std::isfinite(threshold) && threshold >= 0.0)) {
    throw std::domain_error("expected_positive_part requires threshold >= 0, got " +
                            std::to_string(threshold));
  }
  // Integrating the tail of the Gamma(shape, 1) density:
  //   E(S - t)^+ = integral_t^inf (s - t) s^{k-1} e^{-s} / Gamma(k) ds
  //              = k Q(k+1, t) - t Q(k, t).
  const double value = shape * reg_upper_gamma(shape + 1.0, threshold) -
                       threshold * reg_upper_gamma(shape, threshold);
  return value > 0.0 ? value : 0.0;  // clamp the deep-tail cancellation residue
}

double second_order_constant(const ExpansionSpec& spec, SeriesDiagnostics* diagnostics) {
  if (!(std::isfinite(spec.alpha) && spec.alpha > 0.0)) {
    throw std::invalid_argument("expansion shape must be finite and positive, got " +
                                std::to_string(spec.alpha));
  }
  if (!(std::isfinite(spec.truncation_epsilon) && spec.truncation_epsilon > 0.0)) {
    throw std::invalid_argument("truncation epsilon must be finite and positive");
  }

  double lead, weight, threshold_ratio;
  switch (spec.target_kind) {
    case TargetKind::mean:
      lead = 0.5 - 1.0 / spec.alpha;
      weight = 2.0 / spec.alpha;
      threshold_ratio = 1.5;
      break;
    case TargetKind::variance:
      lead = 0.5 - 2.0 / spec.alpha;
      weight = 4.0 / spec.alpha;
      threshold_ratio = 1.25;
      break;
    default:
      throw std::invalid_argument("second-order expansion unavailable for the " +
                                  std::string(target_name(spec.target_kind)) + " target");
  }

  // Terms decay geometrically once the threshold is deep in the gamma tail;
  // the observed ratio of consecutive terms gives a remainder estimate.
  constexpr long long kMaxTerms = 1000000;
  double series = 0.0;
  double prev_term = 0.0;
  long long n = 0;
  double term = 0.0;
  for (n = 1; n <= kMaxTerms; ++n) {
    const double dn = static_cast<double>(n);
    term = expected_positive_part(dn * spec.alpha, threshold_ratio * spec.alpha * dn) / dn;
    series += term;
    if (term < spec.truncation_epsilon) {
      const double ratio = prev_term > 0.0 ? term / prev_term : 0.0;
      const double tail = ratio < 1.0 ? term * ratio / (1.0 - ratio) : term;
      if (tail < 10.0 * spec.truncation_epsilon) {
        if (diagnostics) {
          diagnostics->terms_used = n;
          diagnostics->last_term = term;
          diagnostics->tail_bound = tail;
        }
        return lead - weight * series;
      }
    }
    prev_term = term;
  }
  throw std::runtime_error("second-order series did not converge within " +
                           std::to_string(kMaxTerms) + " terms");
}

}  // namespace seqgamma
