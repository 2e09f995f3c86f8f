#pragma once

#include "seqgamma/target_functions.hpp"

namespace seqgamma {

// Inputs for the asymptotic expansion of E[N - n*]; only the mean and
// variance targets admit one.
struct ExpansionSpec {
  TargetKind target_kind = TargetKind::mean;
  double alpha = 1.0;
  double truncation_epsilon = 1e-15;
};

// Convergence bookkeeping for a series evaluation.
struct SeriesDiagnostics {
  long long terms_used = 0;
  double last_term = 0.0;
  double tail_bound = 0.0;  // geometric estimate of the discarded remainder
};

// E(S - t)^+ for S ~ Gamma(k, 1): k Q(k+1, t) - t Q(k, t).
// Non-negative, decreasing in t, equal to k at t = 0.
double expected_positive_part(double shape, double threshold);

// The constant part of E[N - n*] as the variance bound shrinks:
//   mean:     1/2 - 1/alpha - (2/alpha) sum_{n>=1} n^{-1} E(S_n - (3/2) alpha n)^+
//   variance: 1/2 - 2/alpha - (4/alpha) sum_{n>=1} n^{-1} E(S_n - (5/4) alpha n)^+
// with S_n ~ Gamma(n alpha, 1). The series is summed until a term drops below
// truncation_epsilon and the estimated remaining tail is negligible.
double second_order_constant(const ExpansionSpec& spec,
                             SeriesDiagnostics* diagnostics = nullptr);

}  // namespace seqgamma
