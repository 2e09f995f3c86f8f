#include "seqgamma/monte_carlo.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace seqgamma {

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SEQGAMMA_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && parsed > 0 && parsed <= 4096) {
      return static_cast<int>(parsed);
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

struct ReplicationRecord {
  long long terminal_n = 0;
  double g_estimate = 0.0;
  bool stopped_by_cap = false;
};

ReplicationRecord run_one(const SimulationPlan& plan, std::uint64_t replication) {
  RngStream rng(plan.seed, replication);
  auto source = [&]() -> std::optional<double> {
    return sample_gamma(plan.true_params, rng);
  };
  const RunOutcome outcome = run_to_completion(plan.target, plan.config, source);
  // The source is infinite, so the run always finishes (possibly at the cap).
  const EstimateResult& r = *outcome.result;
  return ReplicationRecord{r.terminal_n, r.g_estimate, r.stopped_by_cap};
}

}  // namespace

SimulationSummary run_simulation(const SimulationPlan& plan, int threads) {
  if (plan.replications < 1) {
    throw std::invalid_argument("replication count must be >= 1, got " +
                                std::to_string(plan.replications));
  }
  plan.true_params.validate();
  // Fail fast on bad configs before spawning workers.
  (void)new_state(plan.target, plan.config);

  const int R = plan.replications;
  std::vector<ReplicationRecord> records(static_cast<std::size_t>(R));

  const int workers = std::min(resolve_thread_count(threads), R);
  if (workers <= 1) {
    for (int r = 0; r < R; ++r) {
      records[static_cast<std::size_t>(r)] = run_one(plan, static_cast<std::uint64_t>(r));
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        try {
          for (int r = w; r < R; r += workers) {
            records[static_cast<std::size_t>(r)] =
                run_one(plan, static_cast<std::uint64_t>(r));
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  SimulationSummary summary;
  summary.b = plan.config.variance_bound;
  summary.n_star = plan.target.optimal_sample_size(plan.true_params.beta,
                                                   plan.config.variance_bound);
  summary.replications = R;

  double n_sum = 0.0;
  double g_sum = 0.0;
  for (const auto& rec : records) {
    n_sum += static_cast<double>(rec.terminal_n);
    g_sum += rec.g_estimate;
    if (rec.stopped_by_cap) ++summary.cap_hits;
  }
  summary.n_bar = n_sum / R;
  const double g_bar = g_sum / R;

  if (R > 1) {
    double n_ss = 0.0;
    double g_ss = 0.0;
    for (const auto& rec : records) {
      const double dn = static_cast<double>(rec.terminal_n) - summary.n_bar;
      const double dg = rec.g_estimate - g_bar;
      n_ss += dn * dn;
      g_ss += dg * dg;
    }
    summary.s_n = std::sqrt(n_ss / (R - 1));
    summary.var_g = g_ss / (R - 1);
  } else {
    summary.degenerate = true;
  }

  summary.ratio_first_order = summary.n_bar / summary.n_star;
  summary.diff_second_order = summary.n_bar - summary.n_star;
  summary.var_ratio = summary.var_g / plan.config.variance_bound;
  return summary;
}

std::vector<SimulationSummary> run_table(const std::vector<SimulationPlan>& rows,
                                         int threads) {
  if (rows.empty()) {
    throw std::invalid_argument("run_table requires at least one plan");
  }
  std::vector<SimulationSummary> summaries;
  summaries.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    try {
      summaries.push_back(run_simulation(rows[i], threads));
    } catch (const std::exception& e) {
      throw std::runtime_error("row " + std::to_string(i) + ": " + e.what());
    }
  }
  return summaries;
}

}  // namespace seqgamma
