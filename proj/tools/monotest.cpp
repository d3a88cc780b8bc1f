// Command-line front end: `run` executes seeded trials of one tester and
// writes a report, `certify` computes an instance's exact distance to
// monotone via the LP, and `sweep` runs a grid of (n, eps) cells.
//
// Exit codes: 0 on success, 2 on configuration errors, 1 on anything else.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "monotest/monotest.hpp"

namespace {

using namespace monotest;

std::pair<std::string, double> parse_key_value(const std::string& text,
                                               const std::string& flag) {
  auto pos = text.find('=');
  if (pos == std::string::npos || pos == 0)
    throw config_error(flag + " expects KEY=VALUE, got '" + text + "'");
  const std::string key = text.substr(0, pos);
  const std::string val = text.substr(pos + 1);
  try {
    std::size_t used = 0;
    double num = std::stod(val, &used);
    if (used != val.size()) throw std::invalid_argument(val);
    return {key, num};
  } catch (const std::exception&) {
    throw config_error(flag + ": value for '" + key + "' is not a number: '" +
                       val + "'");
  }
}

// Shared flag bundle; each subcommand wires the subset it needs.
struct CliArgs {
  std::string tester = "cond_polylog";
  std::string model;  // empty = the tester's native model
  std::string family = "uniform";
  std::int64_t n = 4096;
  std::uint64_t instanceSeed = 0;
  std::vector<std::string> instanceParams;
  double eps = 0.25;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double gamma = 0.0;
  std::int64_t trials = 20;
  std::uint64_t seed = 1;
  std::vector<std::string> constantOverrides;
  std::string out;
  std::string format = "json";
  bool timing = false;
};

InstanceSpec instance_from_args(const CliArgs& a) {
  InstanceSpec spec;
  spec.family = a.family;
  spec.n = a.n;
  spec.seed = a.instanceSeed;
  for (const auto& kv : a.instanceParams) {
    auto [key, val] = parse_key_value(kv, "--param");
    spec.params[key] = val;
  }
  return spec;
}

ExperimentConfig config_from_args(const CliArgs& a) {
  ExperimentConfig cfg;
  cfg.tester = tester_from_name(a.tester);
  cfg.model = a.model.empty() ? default_model(cfg.tester)
                              : model_from_name(a.model);
  cfg.instance = instance_from_args(a);
  cfg.params.eps = a.eps;
  cfg.params.eps1 = a.eps1;
  cfg.params.eps2 = a.eps2;
  cfg.params.gamma = a.gamma;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.timing = a.timing;
  for (const auto& kv : a.constantOverrides) {
    auto [key, val] = parse_key_value(kv, "--set");
    cfg.constants.apply(key, val);
  }
  return cfg;
}

void emit_report(const Report& rep, const std::string& out,
                 const std::string& format) {
  ReportFormat fmt = report_format_from_name(format);
  if (out.empty()) {
    if (fmt == ReportFormat::Json)
      std::cout << rep.to_json().dump(2) << "\n";
    else
      std::cout << rep.to_csv();
    return;
  }
  write_report(rep, out, fmt);
  Aggregates agg = rep.aggregates();
  std::cout << "wrote " << out << " (accepted " << agg.accepts << "/"
            << agg.trials << ", max total queries " << agg.maxQueries[6]
            << ")\n";
}

int do_run(const CliArgs& a) {
  Report rep = run_experiment(config_from_args(a));
  emit_report(rep, a.out, a.format);
  return 0;
}

int do_certify(const CliArgs& a) {
  InstanceSpec spec = instance_from_args(a);
  Pmf d = generate_instance(spec);
  double dist = certify_distance_to_monotone(d);
  nlohmann::json j{{"instance", spec.to_json()},
                   {"distance_to_monotone", dist},
                   {"monotone", dist <= 1e-12}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

// File-name fragment for one eps value: "0.25" -> "0p25".
std::string eps_tag(double eps) {
  std::string s = detail::format_double(eps);
  for (char& c : s)
    if (c == '.') c = 'p';
  return s;
}

int do_sweep(const CliArgs& a, const std::vector<std::int64_t>& ns,
             const std::vector<double>& epss, const std::string& outDir) {
  if (ns.empty() || epss.empty())
    throw config_error("sweep: need at least one --n and one --eps");
  std::filesystem::create_directories(outDir);
  ReportFormat fmt = report_format_from_name(a.format);
  const char* ext = fmt == ReportFormat::Json ? ".json" : ".csv";
  int cells = 0;
  for (std::int64_t n : ns) {
    for (double eps : epss) {
      CliArgs cell = a;
      cell.n = n;
      // For tolerant testers the grid varies the far radius eps2; plain
      // testers read eps.
      if (tester_is_tolerant(tester_from_name(a.tester)))
        cell.eps2 = eps;
      else
        cell.eps = eps;
      ExperimentConfig cfg = config_from_args(cell);
      Report rep = run_experiment(cfg);
      std::filesystem::path file =
          std::filesystem::path(outDir) /
          (a.tester + "_" + a.family + "_n" + std::to_string(n) + "_eps" +
           eps_tag(eps) + ext);
      write_report(rep, file.string(), fmt);
      Aggregates agg = rep.aggregates();
      std::cout << file.string() << ": accepted " << agg.accepts << "/"
                << agg.trials << ", max total queries " << agg.maxQueries[6]
                << "\n";
      cells++;
    }
  }
  std::cout << "wrote " << cells << " report(s) to " << outDir << "\n";
  return 0;
}

void add_instance_flags(CLI::App* cmd, CliArgs& a) {
  cmd->add_option("--family", a.family,
                  "Instance family (uniform, random_monotone, staircase, "
                  "mirrored_staircase, perturbed_monotone, random_pmf, "
                  "eval_lb, hidden_spike)")
      ->capture_default_str();
  cmd->add_option("--instance-seed", a.instanceSeed,
                  "Seed for randomized instance families")
      ->capture_default_str();
  cmd->add_option("--param", a.instanceParams,
                  "Instance family parameter KEY=VALUE (repeatable)");
}

void add_run_flags(CLI::App* cmd, CliArgs& a) {
  cmd->add_option("--tester", a.tester,
                  "Tester (samp, cond_polylog, intcond, cond_polyeps, eval, "
                  "cumulative, tolerant_dual, tolerant_cumulative)")
      ->capture_default_str();
  cmd->add_option("--model", a.model,
                  "Oracle access model (defaults to the tester's native one)");
  cmd->add_option("--eps1", a.eps1, "Tolerant close radius")
      ->capture_default_str();
  cmd->add_option("--eps2", a.eps2, "Tolerant far radius")
      ->capture_default_str();
  cmd->add_option("--gamma", a.gamma, "Tolerant separation margin")
      ->capture_default_str();
  cmd->add_option("--trials", a.trials, "Independent trials")
      ->capture_default_str();
  cmd->add_option("--seed", a.seed, "Master seed; trial t derives its own")
      ->capture_default_str();
  cmd->add_option("--set", a.constantOverrides,
                  "Constant override KEY=VALUE (repeatable)");
  cmd->add_option("--format", a.format, "Report format: json or csv")
      ->capture_default_str();
  cmd->add_flag("--timing", a.timing,
                "Record per-trial wall time (makes reruns differ)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Monotonicity-testing experiment harness for distributions on "
      "{1..n} under sampling, conditional, evaluation, and cumulative "
      "oracle access"};
  app.require_subcommand(1);

  CliArgs args;
  std::vector<std::int64_t> sweepNs;
  std::vector<double> sweepEps;
  std::string sweepOutDir = "reports";

  CLI::App* runCmd = app.add_subcommand(
      "run", "Run seeded trials of one tester and emit a report");
  add_run_flags(runCmd, args);
  add_instance_flags(runCmd, args);
  runCmd->add_option("--n", args.n, "Domain size")->capture_default_str();
  runCmd->add_option("--eps", args.eps, "Proximity parameter")
      ->capture_default_str();
  runCmd->add_option("--out", args.out,
                     "Output file (omit to print to stdout)");

  CLI::App* certifyCmd = app.add_subcommand(
      "certify", "Compute an instance's exact distance to monotone");
  add_instance_flags(certifyCmd, args);
  certifyCmd->add_option("--n", args.n, "Domain size")->capture_default_str();

  CLI::App* sweepCmd = app.add_subcommand(
      "sweep", "Run a grid over n and eps, one report file per cell");
  add_run_flags(sweepCmd, args);
  add_instance_flags(sweepCmd, args);
  sweepCmd->add_option("--n", sweepNs, "Domain sizes (repeatable)")
      ->required();
  sweepCmd
      ->add_option("--eps", sweepEps,
                   "Proximity parameters (repeatable; fills eps2 for "
                   "tolerant testers)")
      ->required();
  sweepCmd->add_option("--out-dir", sweepOutDir, "Report directory")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    if (runCmd->parsed()) return do_run(args);
    if (certifyCmd->parsed()) return do_certify(args);
    if (sweepCmd->parsed()) return do_sweep(args, sweepNs, sweepEps,
                                            sweepOutDir);
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags are configuration errors
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
