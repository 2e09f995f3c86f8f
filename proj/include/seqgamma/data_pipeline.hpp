#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqgamma/target_functions.hpp"

namespace seqgamma {

struct Dataset {
  std::vector<double> values;  // file order preserved
  std::string source_label;
};

struct AnalysisOptions {
  int pilot_size = 1;
  double variance_bound = 1.0;
  // Ties in the raw data produce zero transformed values, which the model says
  // cannot happen; by default that is an error, with an opt-in to drop them.
  bool drop_zeros = false;
};

struct AnalysisReport {
  TargetKind target_kind = TargetKind::mean;
  double threshold_c = 0.0;  // survival only
  int pilot_size = 0;
  double variance_bound = 0.0;
  std::optional<long long> terminal_n;  // absent when the data ran out first
  std::optional<double> estimate;
  bool exhausted = false;
  long long observations_used = 0;  // transformed values consumed
  long long zeros_dropped = 0;
};

// Read one numeric column. `column` is a 0-based index ("0", "2", ...) or a
// header name; selecting by name implies a header row. Blank lines are
// skipped; any unparseable cell is reported with its line number.
// Throws std::runtime_error on file or parse problems.
Dataset load_csv(const std::filesystem::path& path, const std::string& column,
                 bool has_header);

// Y_i = (i / (i + 1)) (X_{i+1} - mean(X_1..X_i))^2: Helmert-style recursive
// residuals. For i.i.d. N(mu, sigma^2) inputs the outputs are i.i.d.
// Gamma(1/2, 2 sigma^2), which is what lets the gamma machinery run on normal
// data. Output length is input length - 1; order-dependent by construction.
// Throws std::runtime_error on fewer than 2 inputs.
std::vector<double> normal_gamma_transform(std::span<const double> xs);

// Transform the dataset and drive the stopping rule over the transformed
// sequence in order. The transformation fixes the shape at 1/2, so `target`
// must be built with alpha = 0.5. Reports either the terminal sample size and
// estimate or an exhausted status.
AnalysisReport analyze(const Dataset& dataset, const TargetFunction& target,
                       const AnalysisOptions& options);

}  // namespace seqgamma
