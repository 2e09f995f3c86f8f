#include "seqgamma/table_presets.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace seqgamma {

TargetFunction TablePreset::make_target() const {
  switch (kind) {
    case TargetKind::mean: return TargetFunction::mean(alpha);
    case TargetKind::variance: return TargetFunction::variance(alpha);
    case TargetKind::rate: return TargetFunction::rate(alpha);
    case TargetKind::survival: return TargetFunction::survival(alpha, c);
  }
  throw std::logic_error("unreachable target kind");
}

const std::vector<TablePreset>& builtin_table_presets() {
  static const std::vector<TablePreset> presets = {
      {1, TargetKind::mean, 2.0, 2.0, 0.0, 20,
       {0.160, 0.080, 0.040, 0.016, 0.008, 0.004}},
      {2, TargetKind::variance, 2.0, 1.0, 0.0, 20,
       {0.160, 0.080, 0.040, 0.016, 0.008, 0.004}},
      {3, TargetKind::rate, 2.0, 1.0, 0.0, 20,
       {0.010, 0.005, 0.0025, 0.0010, 0.0005, 0.00025}},
      {4, TargetKind::survival, 2.0, 2.0, 3.0, 20,
       {0.00252, 0.00126, 0.00063, 0.000252, 0.000126, 0.000063}},
  };
  return presets;
}

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

double parse_real(std::string_view text, std::size_t line_number) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::runtime_error("presets line " + std::to_string(line_number) +
                             ": cannot parse '" + std::string(text) + "' as a number");
  }
  return value;
}

void finish_preset(TablePreset& preset, bool open, std::vector<TablePreset>& out) {
  if (!open) return;
  if (preset.b_grid.empty()) {
    throw std::runtime_error("presets: table " + std::to_string(preset.table_id) +
                             " has no b grid");
  }
  if (preset.kind == TargetKind::survival && preset.c <= 0.0) {
    throw std::runtime_error("presets: table " + std::to_string(preset.table_id) +
                             " is a survival table but sets no threshold c");
  }
  out.push_back(preset);
}

}  // namespace

std::vector<TablePreset> load_presets_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open presets file: " + path.string());
  }

  std::vector<TablePreset> presets;
  TablePreset current;
  bool in_section = false;
  bool version_seen = false;

  std::string raw;
  std::size_t line_number = 0;
  while (std::getline(in, raw)) {
    ++line_number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw std::runtime_error("presets line " + std::to_string(line_number) +
                                 ": unterminated section header");
      }
      finish_preset(current, in_section, presets);
      std::string_view name = trim(line.substr(1, line.size() - 2));
      if (!name.starts_with("table")) {
        throw std::runtime_error("presets line " + std::to_string(line_number) +
                                 ": expected a [table N] section, got [" +
                                 std::string(name) + "]");
      }
      current = TablePreset{};
      current.table_id =
          static_cast<int>(parse_real(trim(name.substr(5)), line_number));
      in_section = true;
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::runtime_error("presets line " + std::to_string(line_number) +
                               ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (!in_section) {
      if (key == "version") {
        version_seen = true;
        if (value != "1") {
          throw std::runtime_error("presets: unsupported version '" + std::string(value) +
                                   "' (this build reads version 1)");
        }
        continue;
      }
      throw std::runtime_error("presets line " + std::to_string(line_number) +
                               ": key '" + std::string(key) + "' outside any [table N] section");
    }

    if (key == "target") {
      current.kind = parse_target(value);
    } else if (key == "alpha") {
      current.alpha = parse_real(value, line_number);
    } else if (key == "beta") {
      current.beta = parse_real(value, line_number);
    } else if (key == "c") {
      current.c = parse_real(value, line_number);
    } else if (key == "m") {
      current.pilot_size = static_cast<int>(parse_real(value, line_number));
    } else if (key == "b") {
      current.b_grid.clear();
      std::size_t start = 0;
      const std::string list(value);
      for (std::size_t i = 0; i <= list.size(); ++i) {
        if (i == list.size() || list[i] == ',') {
          const std::string_view item = trim(std::string_view(list).substr(start, i - start));
          if (!item.empty()) current.b_grid.push_back(parse_real(item, line_number));
          start = i + 1;
        }
      }
    } else {
      throw std::runtime_error("presets line " + std::to_string(line_number) +
                               ": unknown key '" + std::string(key) + "'");
    }
  }
  finish_preset(current, in_section, presets);

  if (!version_seen) {
    throw std::runtime_error("presets: missing 'version' key in " + path.string());
  }
  if (presets.empty()) {
    throw std::runtime_error("presets: no [table N] sections in " + path.string());
  }
  return presets;
}

}  // namespace seqgamma
