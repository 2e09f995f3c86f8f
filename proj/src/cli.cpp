#include "seqgamma/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "seqgamma/data_pipeline.hpp"
#include "seqgamma/monte_carlo.hpp"
#include "seqgamma/second_order.hpp"
#include "seqgamma/sequential_engine.hpp"
#include "seqgamma/table_presets.hpp"
#include "seqgamma/target_functions.hpp"

namespace seqgamma {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Bounds span 0.16 down to 6.3e-5 in the reference tables; print them the way
// a person would write them, without trailing zero noise.
std::string format_bound(double b) {
  if (b < 1e-6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", b);
    return buf;
  }
  std::string s = format_fixed(b, 6);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (s.back() == '.') s.push_back('0');
  return s;
}

TargetFunction build_target(const std::string& name, double alpha,
                            const std::optional<double>& c) {
  const TargetKind kind = parse_target(name);
  if (kind == TargetKind::survival) {
    if (!c.has_value()) {
      throw std::invalid_argument("the survival target requires --c");
    }
    return TargetFunction::survival(alpha, *c);
  }
  if (c.has_value()) {
    throw std::invalid_argument("only the survival target takes --c");
  }
  switch (kind) {
    case TargetKind::mean: return TargetFunction::mean(alpha);
    case TargetKind::variance: return TargetFunction::variance(alpha);
    default: return TargetFunction::rate(alpha);
  }
}

std::vector<double> parse_real_list(const std::string& text, const char* flag) {
  std::vector<double> values;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      const std::string item = text.substr(start, i - start);
      start = i + 1;
      if (item.empty()) continue;
      try {
        std::size_t consumed = 0;
        const double v = std::stod(item, &consumed);
        if (consumed != item.size()) throw std::invalid_argument(item);
        values.push_back(v);
      } catch (const std::exception&) {
        throw std::invalid_argument(std::string(flag) + ": cannot parse '" + item +
                                    "' as a number");
      }
    }
  }
  if (values.empty()) {
    throw std::invalid_argument(std::string(flag) + ": expected at least one value");
  }
  return values;
}

std::vector<int> parse_int_list(const std::string& text, const char* flag) {
  std::vector<int> values;
  for (double v : parse_real_list(text, flag)) {
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
      throw std::invalid_argument(std::string(flag) + ": expected integers");
    }
    values.push_back(i);
  }
  return values;
}

const char* kRowHeader =
    "           b      n_star       n_bar         s_n       ratio        diff"
    "       var_g   var_ratio";

void render_row_text(std::ostream& out, const SimulationSummary& s) {
  out << std::setw(12) << format_bound(s.b) << std::setw(12)
      << format_fixed(s.n_star, 4) << std::setw(12) << format_fixed(s.n_bar, 4)
      << std::setw(12) << format_fixed(s.s_n, 4) << std::setw(12)
      << format_fixed(s.ratio_first_order, 4) << std::setw(12)
      << format_fixed(s.diff_second_order, 4) << std::setw(12)
      << format_fixed(s.var_g, 6) << std::setw(12) << format_fixed(s.var_ratio, 6);
  if (s.cap_hits > 0) out << "  [cap_hits=" << s.cap_hits << "]";
  out << "\n";
}

const char* kCsvHeader = "b,n_star,n_bar,s_n,ratio,diff,var_g,var_ratio,cap_hits\n";

void render_row_csv(std::ostream& out, const SimulationSummary& s) {
  out << format_bound(s.b) << ',' << format_fixed(s.n_star, 4) << ','
      << format_fixed(s.n_bar, 4) << ',' << format_fixed(s.s_n, 4) << ','
      << format_fixed(s.ratio_first_order, 4) << ','
      << format_fixed(s.diff_second_order, 4) << ',' << format_fixed(s.var_g, 6) << ','
      << format_fixed(s.var_ratio, 6) << ',' << s.cap_hits << "\n";
}

ordered_json row_to_json(const SimulationSummary& s) {
  ordered_json row;
  row["b"] = s.b;
  row["n_star"] = s.n_star;
  row["n_bar"] = s.n_bar;
  row["s_n"] = s.s_n;
  row["ratio"] = s.ratio_first_order;
  row["diff"] = s.diff_second_order;
  row["var_g"] = s.var_g;
  row["var_ratio"] = s.var_ratio;
  row["cap_hits"] = s.cap_hits;
  row["replications"] = s.replications;
  if (s.degenerate) row["degenerate"] = true;
  return row;
}

struct SimulateArgs {
  std::string target;
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> c;
  int m = 0;
  double b = 0.0;
  int reps = 10000;
  std::uint64_t seed = 1;
  long long cap = 100000000;
  int threads = 0;
  std::string format = "text";
  bool timing = false;
};

int do_simulate(const SimulateArgs& args, std::ostream& out) {
  const TargetFunction target = build_target(args.target, args.alpha, args.c);
  SimulationPlan plan{target,
                      GammaParams{args.alpha, args.beta},
                      StoppingConfig{args.m, args.b, args.alpha, args.cap, false},
                      args.reps,
                      args.seed};
  const auto started = std::chrono::steady_clock::now();
  const SimulationSummary summary = run_simulation(plan, args.threads);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                    started).count();

  if (args.format == "csv") {
    out << kCsvHeader;
    render_row_csv(out, summary);
  } else if (args.format == "json") {
    ordered_json j;
    j["command"] = "simulate";
    j["target"] = args.target;
    j["alpha"] = args.alpha;
    j["beta"] = args.beta;
    if (args.c.has_value()) j["c"] = *args.c;
    j["m"] = args.m;
    j["b"] = args.b;
    j["replications"] = args.reps;
    j["seed"] = args.seed;
    j["cap"] = args.cap;
    j["row"] = row_to_json(summary);
    if (args.timing) j["wall_seconds"] = wall;
    out << j.dump(2) << "\n";
  } else {
    out << "# simulate: target=" << args.target << " alpha=" << format_bound(args.alpha)
        << " beta=" << format_bound(args.beta);
    if (args.c.has_value()) out << " c=" << format_bound(*args.c);
    out << " m=" << args.m << " reps=" << args.reps << " seed=" << args.seed << "\n"
        << kRowHeader << "\n";
    render_row_text(out, summary);
    if (args.timing) out << "# wall " << format_fixed(wall, 2) << " s\n";
  }
  return summary.cap_hits > 0 ? 3 : 0;
}

struct TablesArgs {
  int table = 0;
  int reps = 10000;
  std::uint64_t seed = 1;
  std::string presets_path;
  int threads = 0;
  std::string format = "text";
  bool timing = false;
};

int do_tables(const TablesArgs& args, std::ostream& out) {
  const std::vector<TablePreset> presets = args.presets_path.empty()
                                               ? builtin_table_presets()
                                               : load_presets_file(args.presets_path);
  const TablePreset* preset = nullptr;
  for (const auto& p : presets) {
    if (p.table_id == args.table) {
      preset = &p;
      break;
    }
  }
  if (!preset) {
    std::string known;
    for (const auto& p : presets) {
      if (!known.empty()) known += ", ";
      known += std::to_string(p.table_id);
    }
    throw std::invalid_argument("unknown table " + std::to_string(args.table) +
                                " (available: " + known + ")");
  }

  const TargetFunction target = preset->make_target();
  std::vector<SimulationPlan> plans;
  plans.reserve(preset->b_grid.size());
  for (double b : preset->b_grid) {
    plans.push_back(SimulationPlan{target,
                                   GammaParams{preset->alpha, preset->beta},
                                   StoppingConfig{preset->pilot_size, b, preset->alpha,
                                                  100000000, false},
                                   args.reps,
                                   args.seed});
  }
  const auto started = std::chrono::steady_clock::now();
  const std::vector<SimulationSummary> rows = run_table(plans, args.threads);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                    started).count();

  long long cap_hits = 0;
  for (const auto& row : rows) cap_hits += row.cap_hits;

  if (args.format == "csv") {
    out << kCsvHeader;
    for (const auto& row : rows) render_row_csv(out, row);
  } else if (args.format == "json") {
    ordered_json j;
    j["command"] = "tables";
    j["table"] = preset->table_id;
    j["target"] = std::string(target_name(preset->kind));
    j["alpha"] = preset->alpha;
    j["beta"] = preset->beta;
    if (preset->kind == TargetKind::survival) j["c"] = preset->c;
    j["m"] = preset->pilot_size;
    j["replications"] = args.reps;
    j["seed"] = args.seed;
    j["rows"] = ordered_json::array();
    for (const auto& row : rows) j["rows"].push_back(row_to_json(row));
    if (args.timing) j["wall_seconds"] = wall;
    out << j.dump(2) << "\n";
  } else {
    out << "# table " << preset->table_id << ": target=" << target_name(preset->kind)
        << " alpha=" << format_bound(preset->alpha)
        << " beta=" << format_bound(preset->beta);
    if (preset->kind == TargetKind::survival) out << " c=" << format_bound(preset->c);
    out << " m=" << preset->pilot_size << " reps=" << args.reps << " seed=" << args.seed
        << "\n"
        << kRowHeader << "\n";
    for (const auto& row : rows) render_row_text(out, row);
    if (args.timing) out << "# wall " << format_fixed(wall, 2) << " s\n";
  }
  return cap_hits > 0 ? 3 : 0;
}

struct ConstantArgs {
  std::string target;
  double alpha = 0.0;
  double epsilon = 1e-15;
  std::string format = "text";
};

int do_constant(const ConstantArgs& args, std::ostream& out) {
  const TargetKind kind = parse_target(args.target);
  if (kind != TargetKind::mean && kind != TargetKind::variance) {
    throw std::invalid_argument("second-order expansion unavailable for this target");
  }
  SeriesDiagnostics diag;
  const ExpansionSpec spec{kind, args.alpha, args.epsilon};
  const double constant = second_order_constant(spec, &diag);

  if (args.format == "csv") {
    out << "target,alpha,truncation_epsilon,constant,terms_used\n"
        << args.target << ',' << format_full(args.alpha) << ',' << args.epsilon << ','
        << format_full(constant) << ',' << diag.terms_used << "\n";
  } else if (args.format == "json") {
    ordered_json j;
    j["command"] = "constant";
    j["target"] = args.target;
    j["alpha"] = args.alpha;
    j["truncation_epsilon"] = args.epsilon;
    j["constant"] = constant;
    j["terms_used"] = diag.terms_used;
    j["last_term"] = diag.last_term;
    j["tail_bound"] = diag.tail_bound;
    out << j.dump(2) << "\n";
  } else {
    out << format_fixed(constant, 4) << "  (target=" << args.target
        << ", alpha=" << format_bound(args.alpha) << ", truncation_epsilon=" << args.epsilon
        << ", terms=" << diag.terms_used << ")\n";
  }
  return 0;
}

struct AnalyzeArgs {
  std::string input;
  std::string column = "0";
  bool header = false;
  std::string target;
  std::optional<double> c;
  std::string m_list;
  std::string b_list;
  bool drop_zeros = false;
  std::string format = "text";
};

int do_analyze(const AnalyzeArgs& args, std::ostream& out) {
  const TargetFunction target = build_target(args.target, 0.5, args.c);
  const std::vector<int> ms = parse_int_list(args.m_list, "--m");
  const std::vector<double> bs = parse_real_list(args.b_list, "--b");
  const Dataset dataset = load_csv(args.input, args.column, args.header);

  std::vector<AnalysisReport> reports;
  for (int m : ms) {
    for (double b : bs) {
      AnalysisOptions options;
      options.pilot_size = m;
      options.variance_bound = b;
      options.drop_zeros = args.drop_zeros;
      reports.push_back(analyze(dataset, target, options));
    }
  }

  if (args.format == "csv") {
    out << "m,b,n,estimate,exhausted,zeros_dropped\n";
    for (const auto& r : reports) {
      out << r.pilot_size << ',' << format_bound(r.variance_bound) << ',';
      if (r.terminal_n.has_value()) out << *r.terminal_n;
      out << ',';
      if (r.estimate.has_value()) out << format_fixed(*r.estimate, 6);
      out << ',' << (r.exhausted ? "true" : "false") << ',' << r.zeros_dropped << "\n";
    }
  } else if (args.format == "json") {
    ordered_json j;
    j["command"] = "analyze";
    j["input"] = dataset.source_label;
    j["target"] = args.target;
    j["alpha"] = 0.5;
    if (args.c.has_value()) j["c"] = *args.c;
    j["raw_count"] = dataset.values.size();
    j["transformed_count"] = dataset.values.size() - 1;
    j["rows"] = ordered_json::array();
    for (const auto& r : reports) {
      ordered_json row;
      row["m"] = r.pilot_size;
      row["b"] = r.variance_bound;
      if (r.terminal_n.has_value()) {
        row["n"] = *r.terminal_n;
        row["estimate"] = *r.estimate;
      } else {
        row["n"] = nullptr;
        row["estimate"] = nullptr;
      }
      row["exhausted"] = r.exhausted;
      row["observations_used"] = r.observations_used;
      row["zeros_dropped"] = r.zeros_dropped;
      j["rows"].push_back(row);
    }
    out << j.dump(2) << "\n";
  } else {
    out << "# analyze: " << dataset.source_label << ", " << dataset.values.size()
        << " raw values, " << dataset.values.size() - 1
        << " transformed, target=" << args.target;
    if (args.c.has_value()) out << " (c=" << format_bound(*args.c) << ")";
    out << ", alpha=0.5\n";
    out << "     m           b       N     estimate\n";
    for (const auto& r : reports) {
      out << std::setw(6) << r.pilot_size << std::setw(12)
          << format_bound(r.variance_bound);
      if (r.terminal_n.has_value()) {
        out << std::setw(8) << *r.terminal_n << std::setw(13)
            << format_fixed(*r.estimate, 6);
      } else {
        out << std::setw(8) << "-" << std::setw(13) << "-";
        out << "  (exhausted after " << r.observations_used << " observations)";
      }
      if (r.zeros_dropped > 0) out << "  [zeros_dropped=" << r.zeros_dropped << "]";
      out << "\n";
    }
  }
  return 0;
}

struct TransformArgs {
  std::string input;
  std::string column = "0";
  bool header = false;
  std::string output;
};

int do_transform(const TransformArgs& args, std::ostream& out) {
  const Dataset dataset = load_csv(args.input, args.column, args.header);
  const std::vector<double> ys = normal_gamma_transform(dataset.values);

  if (args.output == "-") {
    for (double y : ys) out << format_full(y) << "\n";
    return 0;
  }
  std::ofstream file(args.output);
  if (!file) {
    throw std::runtime_error("cannot open output file: " + args.output);
  }
  for (double y : ys) file << format_full(y) << "\n";
  if (!file.good()) {
    throw std::runtime_error("failed while writing: " + args.output);
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequential bounded-variance point estimation for functions of a gamma scale"};
  app.require_subcommand(1);
  const auto target_values = CLI::IsMember({"mean", "variance", "rate", "survival"});
  const auto format_values = CLI::IsMember({"text", "csv", "json"});

  SimulateArgs sim;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "Monte Carlo estimate of one stopping-rule operating row");
  sim_cmd->add_option("--target", sim.target, "estimand")->required()->check(target_values);
  sim_cmd->add_option("--alpha", sim.alpha, "known gamma shape")
      ->required()
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--beta", sim.beta, "true gamma scale")
      ->required()
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--c", sim.c, "survival threshold (survival target only)");
  sim_cmd->add_option("--m", sim.m, "pilot sample size")->required();
  sim_cmd->add_option("--b", sim.b, "variance bound")->required()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--reps", sim.reps, "replications")->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "random seed")->capture_default_str();
  sim_cmd->add_option("--cap", sim.cap, "safety cap on N")->capture_default_str();
  sim_cmd->add_option("--threads", sim.threads, "worker threads (0 = auto)")
      ->capture_default_str();
  sim_cmd->add_option("--format", sim.format, "text, csv, or json")
      ->capture_default_str()
      ->check(format_values);
  sim_cmd->add_flag("--timing", sim.timing, "report wall time");

  TablesArgs tab;
  CLI::App* tab_cmd =
      app.add_subcommand("tables", "reproduce a full reference simulation table");
  tab_cmd->add_option("--table", tab.table, "table number")->required();
  tab_cmd->add_option("--reps", tab.reps, "replications per row")->capture_default_str();
  tab_cmd->add_option("--seed", tab.seed, "random seed")->capture_default_str();
  tab_cmd->add_option("--presets", tab.presets_path, "presets config file");
  tab_cmd->add_option("--threads", tab.threads, "worker threads (0 = auto)")
      ->capture_default_str();
  tab_cmd->add_option("--format", tab.format, "text, csv, or json")
      ->capture_default_str()
      ->check(format_values);
  tab_cmd->add_flag("--timing", tab.timing, "report wall time");

  ConstantArgs con;
  CLI::App* con_cmd = app.add_subcommand(
      "constant", "second-order expansion constant for E[N - n*]");
  con_cmd->add_option("--target", con.target, "mean or variance")
      ->required()
      ->check(target_values);
  con_cmd->add_option("--alpha", con.alpha, "known gamma shape")
      ->required()
      ->check(CLI::PositiveNumber);
  con_cmd->add_option("--epsilon", con.epsilon, "series truncation threshold")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  con_cmd->add_option("--format", con.format, "text, csv, or json")
      ->capture_default_str()
      ->check(format_values);

  AnalyzeArgs ana;
  CLI::App* ana_cmd = app.add_subcommand(
      "analyze", "run the stopping rules over a transformed normal dataset");
  ana_cmd->add_option("--input", ana.input, "CSV file of raw observations")->required();
  ana_cmd->add_option("--column", ana.column, "column index or header name")
      ->capture_default_str();
  ana_cmd->add_flag("--header", ana.header, "input has a header row");
  ana_cmd->add_option("--target", ana.target, "estimand")->required()->check(target_values);
  ana_cmd->add_option("--c", ana.c, "survival threshold (survival target only)");
  ana_cmd->add_option("--m", ana.m_list, "pilot size(s), comma separated")->required();
  ana_cmd->add_option("--b", ana.b_list, "variance bound(s), comma separated")->required();
  ana_cmd->add_flag("--drop-zeros", ana.drop_zeros,
                    "drop zero transformed values (raw-data ties) instead of failing");
  ana_cmd->add_option("--format", ana.format, "text, csv, or json")
      ->capture_default_str()
      ->check(format_values);

  TransformArgs tra;
  CLI::App* tra_cmd = app.add_subcommand(
      "transform", "write the transformed column for a normal dataset");
  tra_cmd->add_option("--input", tra.input, "CSV file of raw observations")->required();
  tra_cmd->add_option("--column", tra.column, "column index or header name")
      ->capture_default_str();
  tra_cmd->add_flag("--header", tra.header, "input has a header row");
  tra_cmd->add_option("--output", tra.output, "output path ('-' for stdout)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*sim_cmd) return do_simulate(sim, out);
    if (*tab_cmd) return do_tables(tab, out);
    if (*con_cmd) return do_constant(con, out);
    if (*ana_cmd) return do_analyze(ana, out);
    if (*tra_cmd) return do_transform(tra, out);
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace seqgamma
