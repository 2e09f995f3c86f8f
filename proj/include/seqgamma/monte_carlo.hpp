#pragma once

#include <cstdint>
#include <vector>

#include "seqgamma/gamma_core.hpp"
#include "seqgamma/sequential_engine.hpp"
#include "seqgamma/target_functions.hpp"

namespace seqgamma {

struct SimulationPlan {
  TargetFunction target;
  GammaParams true_params;
  StoppingConfig config;
  int replications = 10000;
  std::uint64_t seed = 1;
};

struct SimulationSummary {
  double b = 0.0;                  // variance bound the row was run at
  double n_star = 0.0;             // oracle sample size at the true scale
  double n_bar = 0.0;              // average stopped sample size
  double s_n = 0.0;                // sample standard deviation of N
  double ratio_first_order = 0.0;  // n_bar / n_star
  double diff_second_order = 0.0;  // n_bar - n_star
  double var_g = 0.0;              // across-replication sample variance of the estimates
  double var_ratio = 0.0;          // var_g / b
  long long cap_hits = 0;          // replications stopped by the safety cap
  bool degenerate = false;         // single replication: dispersion columns are 0 by convention
  int replications = 0;
};

// Number of worker threads to use: `requested` if positive, otherwise the
// SEQGAMMA_THREADS environment variable, otherwise the hardware concurrency.
int resolve_thread_count(int requested = 0);

// Run one table row: `replications` independent sequential runs over synthetic
// gamma streams. Replication r draws from RngStream(seed, r) regardless of
// worker scheduling, and aggregation visits replications in index order, so
// results are bitwise reproducible at any thread count.
SimulationSummary run_simulation(const SimulationPlan& plan, int threads = 0);

// One summary per plan, order preserved. Row failures are rethrown with the
// row index attached. Throws std::invalid_argument on an empty list.
std::vector<SimulationSummary> run_table(const std::vector<SimulationPlan>& rows,
                                         int threads = 0);

}  // namespace seqgamma
