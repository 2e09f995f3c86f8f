#include "seqgamma/target_functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "seqgamma/gamma_core.hpp"

namespace seqgamma {

std::string_view target_name(TargetKind kind) {
  switch (kind) {
    case TargetKind::mean: return "mean";
    case TargetKind::variance: return "variance";
    case TargetKind::rate: return "rate";
    case TargetKind::survival: return "survival";
  }
  throw std::logic_error("unreachable target kind");
}

TargetKind parse_target(std::string_view name) {
  if (name == "mean") return TargetKind::mean;
  if (name == "variance") return TargetKind::variance;
  if (name == "rate") return TargetKind::rate;
  if (name == "survival") return TargetKind::survival;
  throw std::invalid_argument("unknown target '" + std::string(name) +
                              "' (expected mean, variance, rate, or survival)");
}

TargetFunction::TargetFunction(TargetKind kind, double alpha, double c)
    : kind_(kind), alpha_(alpha), c_(c) {
  if (!(std::isfinite(alpha) && alpha > 0.0)) {
    throw std::invalid_argument("target shape must be finite and positive, got " +
                                std::to_string(alpha));
  }
  switch (kind_) {
    case TargetKind::mean:
      // g(x) = alpha x, g'' = 0; any constant envelope works, alpha keeps units.
      envelope_ = {{alpha_, 0.0}};
      break;
    case TargetKind::variance:
      // g(x) = alpha x^2, |g''| = 2 alpha.
      envelope_ = {{2.0 * alpha_, 0.0}};
      break;
    case TargetKind::rate:
      // g(x) = 1/x, |g''| = 2 x^-3.
      envelope_ = {{2.0, -3.0}};
      break;
    case TargetKind::survival: {
      if (!(std::isfinite(c) && c > 0.0)) {
        throw std::invalid_argument("survival threshold must be finite and positive, got " +
                                    std::to_string(c));
      }
      // g(x) = Q(alpha, c/x); differentiating the derivative below and bounding
      // exp(-c/x) by 1 gives two power terms.
      const double base = std::exp(alpha_ * std::log(c_) - log_gamma(alpha_));
      envelope_ = {{base * (alpha_ + 1.0), -(alpha_ + 2.0)},
                   {base * c_, -(alpha_ + 3.0)}};
      break;
    }
  }
}

TargetFunction TargetFunction::mean(double alpha) {
  return TargetFunction(TargetKind::mean, alpha, 0.0);
}
TargetFunction TargetFunction::variance(double alpha) {
  return TargetFunction(TargetKind::variance, alpha, 0.0);
}
TargetFunction TargetFunction::rate(double alpha) {
  return TargetFunction(TargetKind::rate, alpha, 0.0);
}
TargetFunction TargetFunction::survival(double alpha, double c) {
  return TargetFunction(TargetKind::survival, alpha, c);
}

namespace {

void require_positive_scale(double beta) {
  if (!(std::isfinite(beta) && beta > 0.0)) {
    throw std::invalid_argument("scale must be finite and positive, got " +
                                std::to_string(beta));
  }
}

}  // namespace

double TargetFunction::value(double beta) const {
  require_positive_scale(beta);
  switch (kind_) {
    case TargetKind::mean: return alpha_ * beta;
    case TargetKind::variance: return alpha_ * beta * beta;
    case TargetKind::rate: return 1.0 / beta;
    case TargetKind::survival: return reg_upper_gamma(alpha_, c_ / beta);
  }
  throw std::logic_error("unreachable target kind");
}

double TargetFunction::derivative(double beta) const {
  require_positive_scale(beta);
  switch (kind_) {
    case TargetKind::mean: return alpha_;
    case TargetKind::variance: return 2.0 * alpha_ * beta;
    case TargetKind::rate: return -1.0 / (beta * beta);
    case TargetKind::survival:
      // d/dx Q(alpha, c/x) = (c^alpha / Gamma(alpha)) x^{-(alpha+1)} e^{-c/x}.
      // Positive: a larger scale shifts mass past the threshold. Evaluated in
      // log space to survive extreme shapes and thresholds.
      return std::exp(alpha_ * std::log(c_) - log_gamma(alpha_) -
                      (alpha_ + 1.0) * std::log(beta) - c_ / beta);
  }
  throw std::logic_error("unreachable target kind");
}

int TargetFunction::min_pilot_size(double p) const {
  if (!(std::isfinite(p) && p >= 2.0)) {
    throw std::invalid_argument("moment order must be >= 2, got " + std::to_string(p));
  }
  double k_min = envelope_.front().exponent;
  for (const auto& term : envelope_) {
    k_min = std::min(k_min, term.exponent);
  }
  // Smallest integer m >= 1 with p * k_min + m * alpha > 0; floor(L) + 1 is
  // strictly above L even when L is integral.
  const double lower = -p * k_min / alpha_;
  const int m = static_cast<int>(std::floor(lower)) + 1;
  return std::max(m, 1);
}

double TargetFunction::optimal_sample_size(double beta, double b) const {
  require_positive_scale(beta);
  if (!(std::isfinite(b) && b > 0.0)) {
    throw std::invalid_argument("variance bound must be finite and positive, got " +
                                std::to_string(b));
  }
  const double d = derivative(beta);
  return d * d * beta * beta / (alpha_ * b);
}

}  // namespace seqgamma
