#pragma once

#include <filesystem>
#include <vector>

#include "seqgamma/target_functions.hpp"

namespace seqgamma {

// Parameterization of one reference simulation table: which target, the true
// sampling distribution, the pilot size, and the grid of variance bounds.
struct TablePreset {
  int table_id = 0;
  TargetKind kind = TargetKind::mean;
  double alpha = 1.0;
  double beta = 1.0;
  double c = 0.0;  // survival threshold; 0 when unused
  int pilot_size = 1;
  std::vector<double> b_grid;

  TargetFunction make_target() const;
};

// The four tables the tool reproduces out of the box.
const std::vector<TablePreset>& builtin_table_presets();

// Load presets from a key-value config file (format documented in README.md).
// Throws std::runtime_error on file, syntax, or version problems.
std::vector<TablePreset> load_presets_file(const std::filesystem::path& path);

}  // namespace seqgamma
