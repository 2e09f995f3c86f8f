#include "seqgamma/data_pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "seqgamma/sequential_engine.hpp"

namespace seqgamma {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return fields;
}

bool is_index(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c);
  });
}

double parse_cell(std::string_view cell, std::size_t line_number) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
    throw std::runtime_error("line " + std::to_string(line_number) + ": cannot parse '" +
                             std::string(cell) + "' as a number");
  }
  return value;
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, const std::string& column,
                 bool has_header) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open input file: " + path.string());
  }
  const std::string_view selector = trim(column);
  const bool by_index = is_index(selector);
  if (!by_index && !has_header) {
    has_header = true;  // selecting by name only makes sense with a header row
  }

  if (by_index && selector.size() > 6) {
    throw std::runtime_error("column index '" + std::string(selector) + "' is out of range");
  }

  Dataset dataset;
  dataset.source_label = path.filename().string();
  std::size_t column_index = by_index ? std::stoul(std::string(selector)) : 0;

  std::string raw;
  std::size_t line_number = 0;
  bool header_pending = has_header;
  while (std::getline(in, raw)) {
    ++line_number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const auto fields = split_fields(line);

    if (header_pending) {
      header_pending = false;
      if (!by_index) {
        const auto it = std::find(fields.begin(), fields.end(), selector);
        if (it == fields.end()) {
          throw std::runtime_error("column '" + std::string(selector) +
                                   "' not found in header of " + path.string());
        }
        column_index = static_cast<std::size_t>(it - fields.begin());
      } else if (column_index >= fields.size()) {
        throw std::runtime_error("column index " + std::string(selector) +
                                 " out of range: header has " +
                                 std::to_string(fields.size()) + " fields");
      }
      continue;
    }

    if (column_index >= fields.size()) {
      throw std::runtime_error("line " + std::to_string(line_number) + ": expected at least " +
                               std::to_string(column_index + 1) + " fields, got " +
                               std::to_string(fields.size()));
    }
    dataset.values.push_back(parse_cell(fields[column_index], line_number));
  }
  return dataset;
}

std::vector<double> normal_gamma_transform(std::span<const double> xs) {
  if (xs.size() < 2) {
    throw std::runtime_error("the transformation needs at least 2 observations, got " +
                             std::to_string(xs.size()));
  }
  std::vector<double> ys;
  ys.reserve(xs.size() - 1);
  double running_mean = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double prefix = static_cast<double>(i);  // observations already averaged
    const double residual = xs[i] - running_mean;
    ys.push_back(prefix / (prefix + 1.0) * residual * residual);
    running_mean += residual / (prefix + 1.0);
  }
  return ys;
}

AnalysisReport analyze(const Dataset& dataset, const TargetFunction& target,
                       const AnalysisOptions& options) {
  if (target.alpha() != 0.5) {
    throw std::invalid_argument(
        "the transformation fixes the shape at 0.5; build the target with alpha = 0.5");
  }
  const std::vector<double> ys = normal_gamma_transform(dataset.values);

  AnalysisReport report;
  report.target_kind = target.kind();
  report.threshold_c = target.kind() == TargetKind::survival ? target.threshold() : 0.0;
  report.pilot_size = options.pilot_size;
  report.variance_bound = options.variance_bound;

  StoppingConfig config;
  config.pilot_size = options.pilot_size;
  config.variance_bound = options.variance_bound;
  config.alpha = target.alpha();

  std::size_t next = 0;
  auto source = [&]() -> std::optional<double> {
    while (next < ys.size()) {
      const double y = ys[next++];
      if (y == 0.0 && options.drop_zeros) {
        ++report.zeros_dropped;
        continue;
      }
      return y;  // zeros flow through to the engine's data-error check otherwise
    }
    return std::nullopt;
  };

  RunOutcome outcome;
  try {
    outcome = run_to_completion(target, config, source);
  } catch (const std::domain_error&) {
    throw std::runtime_error(
        "transformed value " + std::to_string(next) +
        " is zero (tie in the raw data); rerun with zero-dropping enabled");
  }
  report.observations_used = outcome.state.count;
  if (outcome.exhausted()) {
    report.exhausted = true;
  } else {
    report.terminal_n = outcome.result->terminal_n;
    report.estimate = outcome.result->g_estimate;
  }
  return report;
}

}  // namespace seqgamma
