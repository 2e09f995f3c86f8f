#pragma once

#include <string_view>
#include <vector>

namespace seqgamma {

enum class TargetKind { mean, variance, rate, survival };

std::string_view target_name(TargetKind kind);
// Parses "mean" / "variance" / "rate" / "survival"; throws std::invalid_argument otherwise.
TargetKind parse_target(std::string_view name);

// One term of a power envelope sum_j coefficient_j * x^{exponent_j} that
// dominates |g''| on (0, inf).
struct CurvatureTerm {
  double coefficient;
  double exponent;
};

// A smooth monotone functional g of the gamma scale, estimated by plugging in
// the running maximum-likelihood scale estimate. Bundles the pieces the
// stopping rule and its second-order analysis need: g, g', a curvature
// envelope, and the pilot-size floor that keeps moments of the stopped
// sample size finite.
class TargetFunction {
 public:
  static TargetFunction mean(double alpha);
  static TargetFunction variance(double alpha);
  static TargetFunction rate(double alpha);
  // Probability of exceeding the threshold c: g(beta) = Q(alpha, c / beta).
  static TargetFunction survival(double alpha, double c);

  TargetKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  // Survival threshold; only meaningful for TargetKind::survival.
  double threshold() const { return c_; }

  double value(double beta) const;
  double derivative(double beta) const;

  // Envelope |g''(x)| <= sum_j a_j x^{k_j}, valid on all of (0, inf).
  const std::vector<CurvatureTerm>& curvature_envelope() const { return envelope_; }

  // Smallest pilot size m with p * min_j k_j + m * alpha > 0, which keeps
  // E[N^p] finite for the stopped sample size. Requires p >= 2.
  int min_pilot_size(double p = 2.0) const;

  // Sample size that balances estimator variance against the bound b:
  // {g'(beta)}^2 beta^2 / (alpha b). Also the stopping boundary when the
  // plug-in estimate is substituted for beta.
  double optimal_sample_size(double beta, double b) const;
  double stopping_boundary(double beta_hat, double b) const {
    return optimal_sample_size(beta_hat, b);
  }

 private:
  TargetFunction(TargetKind kind, double alpha, double c);

  TargetKind kind_;
  double alpha_;
  double c_;
  std::vector<CurvatureTerm> envelope_;
};

}  // namespace seqgamma
