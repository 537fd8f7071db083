#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netfail/asymptotics.hpp"
#include "netfail/estimators.hpp"
#include "netfail/experiment.hpp"
#include "netfail/serialization.hpp"

namespace {

using namespace netfail;

constexpr int kRuntimeError = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string preset;
  std::string config_path;
  std::vector<std::string> methods;
  std::vector<double> n_values;
  double k = 0.0;
  std::string k_rule;
  std::size_t replications = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string format;
  std::string out;
  bool no_timing = false;
  bool progress = false;

  CLI::Option* k_opt = nullptr;
  CLI::Option* k_rule_opt = nullptr;
  CLI::Option* replications_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* methods_opt = nullptr;
  CLI::Option* format_opt = nullptr;
  CLI::Option* out_opt = nullptr;
};

std::string valid_methods() {
  std::string names;
  for (Method m : {Method::Naive, Method::ImportanceSampling,
                   Method::ConditionalMC}) {
    if (!names.empty()) names += ", ";
    names += method_name(m);
  }
  return names;
}

Method method_or_throw(const std::string& name) {
  auto m = parse_method(name);
  if (!m) {
    throw UsageError("unknown method '" + name +
                     "'; valid methods: " + valid_methods());
  }
  return *m;
}

void add_source_options(CLI::App& cmd, CommonOptions& o) {
  auto* p = cmd.add_option("--preset", o.preset, "Built-in experiment")
                ->check(CLI::IsMember(preset_names()));
  cmd.add_option("--config", o.config_path, "JSON experiment file")
      ->excludes(p);
}

void add_run_options(CLI::App& cmd, CommonOptions& o) {
  o.n_opt = cmd.add_option("--n", o.n_values, "Comma-separated n values")
                ->delimiter(',');
  o.k_opt = cmd.add_option("--k", o.k, "Constant threshold");
  o.k_rule_opt =
      cmd.add_option("--k-rule", o.k_rule, "Threshold rule, e.g. 20*n^0.5")
          ->excludes(o.k_opt);
  o.replications_opt =
      cmd.add_option("--replications,-N", o.replications, "Replications");
  o.seed_opt = cmd.add_option("--seed", o.seed,
                              "Base seed (fallback: NETFAIL_SEED)");
  o.threads_opt =
      cmd.add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  o.format_opt = cmd.add_option("--format", o.format, "table or csv")
                     ->check(CLI::IsMember({"table", "csv"}));
  o.out_opt = cmd.add_option("--out", o.out, "Output file");
  cmd.add_flag("--no-timing", o.no_timing,
               "Write NA for timing columns (reproducible output)");
  cmd.add_flag("--progress", o.progress, "Report finished rows on stderr");
}

std::optional<std::uint64_t> env_seed() {
  const char* text = std::getenv("NETFAIL_SEED");
  if (text == nullptr || *text == '\0') return std::nullopt;
  std::size_t used = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(text, &used, 10);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || text[used] != '\0') {
    throw UsageError(std::string("NETFAIL_SEED is not an unsigned integer: '") +
                     text + "'");
  }
  return value;
}

ExperimentConfig load_config(const CommonOptions& o) {
  if (!o.preset.empty()) return preset(o.preset);
  if (o.config_path.empty()) {
    throw UsageError("one of --preset or --config is required");
  }
  auto base = std::filesystem::path(o.config_path).parent_path().string();
  if (base.empty()) base = ".";
  return experiment_from_json(read_text_file(o.config_path), base);
}

ExperimentConfig build_config(const CommonOptions& o) {
  ExperimentConfig config = load_config(o);
  if (o.methods_opt && o.methods_opt->count() > 0) {
    config.methods.clear();
    for (const auto& name : o.methods) {
      config.methods.push_back(method_or_throw(name));
    }
  }
  if (o.n_opt->count() > 0) config.n_values = o.n_values;
  if (o.k_opt->count() > 0) config.threshold = ThresholdRule::constant(o.k);
  if (o.k_rule_opt->count() > 0) {
    try {
      config.threshold = parse_threshold_rule(o.k_rule);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--k-rule: ") + e.what());
    }
  }
  if (o.replications_opt->count() > 0) config.replications = o.replications;
  if (o.seed_opt->count() > 0) {
    config.seed = o.seed;
  } else if (auto s = env_seed()) {
    config.seed = *s;
  }
  if (o.threads_opt->count() > 0) config.threads = o.threads;
  if (o.format_opt->count() > 0) {
    config.format = o.format == "csv" ? OutputFormat::Csv : OutputFormat::Table;
  }
  if (o.out_opt->count() > 0) config.output_path = o.out;
  if (o.no_timing) config.timing = false;
  return config;
}

// Writes to the configured path, or standard output when it is empty.
template <typename Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
  write(file);
  file.flush();
  if (!file) throw std::runtime_error("write failed for '" + path + "'");
}

int cmd_run(const CommonOptions& o) {
  ExperimentConfig config = build_config(o);
  config.check();
  ProgressCallback progress;
  if (o.progress) {
    progress = [](const ComparisonRow& row) {
      std::fprintf(stderr, "n=%g %s: %zu replications, alpha=%s\n", row.n,
                   std::string(method_name(row.method)).c_str(),
                   row.stats.replications,
                   format_significant(row.stats.mean).c_str());
    };
  }
  auto rows = run_experiment(config, progress);
  emit(config.output_path, [&](std::ostream& out) {
    write_results(out, rows, config.format, config.timing);
  });
  return 0;
}

int cmd_rate_sweep(const CommonOptions& o, const std::string& method_text) {
  ExperimentConfig config = build_config(o);
  Method method = method_or_throw(method_text);
  config.methods = {method};
  config.check();
  EstimatorConfig est = config.estimator(method);
  RateReport report =
      rate_sweep(config.network, config.n_values, config.threshold, est);
  emit(config.output_path, [&](std::ostream& out) {
    if (config.format == OutputFormat::Csv) {
      write_rate_csv(out, report);
      return;
    }
    char line[160];
    std::snprintf(line, sizeof line,
                  "critical node %d, gamma/sigma = %.6g, rate = %.6g\n",
                  report.header.critical_node + 1, report.header.ratio,
                  report.header.rate);
    out << line;
    std::snprintf(line, sizeof line, "%8s %8s %12s %12s %12s\n", "n", "k",
                  "alpha", "n^-2b log a", "|diff|");
    out << line;
    for (const auto& row : report.rows) {
      std::string scaled = row.estimable ? format_significant(row.scaled_log, 4)
                                         : std::string("NaN");
      std::string diff = row.estimable ? format_significant(row.discrepancy, 3)
                                       : std::string("NaN");
      std::snprintf(line, sizeof line, "%8g %8.4g %12s %12s %12s\n", row.n,
                    row.k, format_significant(row.stats.mean).c_str(),
                    scaled.c_str(), diff.c_str());
      out << line;
    }
  });
  return 0;
}

int cmd_validate(const CommonOptions& o) {
  ExperimentConfig config = load_config(o);
  ValidationReport report = validate_network(config.network);
  if (!report.ok()) {
    std::cerr << "invalid network: " << report.summary() << '\n';
    return kRuntimeError;
  }
  std::cout << "network ok: " << config.network.dimension() << " nodes\n";
  RateHeader rate = ld_rate(config.network);
  std::cout << "decay rate " << rate.rate << " (critical node "
            << rate.critical_node + 1 << ")\n";
  for (double n : config.n_values) {
    ScaledInstance inst = scale_instance(config.network, n, config.threshold);
    for (const auto& w : inst.warnings) {
      std::cout << "warning (n=" << n << "): " << w << '\n';
    }
  }
  return 0;
}

int cmd_presets(const std::string& show) {
  if (!show.empty()) {
    std::cout << experiment_to_json(preset(show)) << '\n';
    return 0;
  }
  for (const auto& name : preset_names()) {
    ExperimentConfig c = preset(name);
    std::cout << name << "  d=" << c.network.dimension()
              << "  n=" << c.n_values.size() << " values\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Failure probability estimation for Gaussian-demand networks"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  auto* run = app.add_subcommand("run", "Estimate failure probabilities");
  add_source_options(*run, run_opts);
  add_run_options(*run, run_opts);
  run_opts.methods_opt =
      run->add_option("--methods", run_opts.methods, "naive,is,cmc")
          ->delimiter(',');

  CommonOptions sweep_opts;
  std::string sweep_method = "is";
  auto* sweep = app.add_subcommand(
      "rate-sweep", "Compare scaled log-probabilities with the decay rate");
  add_source_options(*sweep, sweep_opts);
  add_run_options(*sweep, sweep_opts);
  sweep->add_option("--method", sweep_method, "Estimator (default is)");

  CommonOptions validate_opts;
  auto* validate =
      app.add_subcommand("validate", "Check a network and its n grid");
  add_source_options(*validate, validate_opts);

  std::string show;
  auto* presets = app.add_subcommand("presets", "List built-in experiments");
  presets->add_option("--show", show, "Print a preset as JSON")
      ->check(CLI::IsMember(preset_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (run->parsed()) return cmd_run(run_opts);
    if (sweep->parsed()) return cmd_rate_sweep(sweep_opts, sweep_method);
    if (validate->parsed()) return cmd_validate(validate_opts);
    if (presets->parsed()) return cmd_presets(show);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}
