#pragma once

// Experiment runner: builds one hidden instance, runs seeded independent
// trials of a chosen tester against fresh oracle sessions, and aggregates
// decisions and query ledgers into machine-readable reports (JSON or CSV).

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "monotest/budgets.hpp"
#include "monotest/common.hpp"
#include "monotest/config.hpp"
#include "monotest/instances.hpp"
#include "monotest/oracle.hpp"
#include "monotest/pmf.hpp"
#include "monotest/rng.hpp"
#include "monotest/testers.hpp"

namespace monotest {

inline bool tester_is_tolerant(TesterKind t) {
  return t == TesterKind::TolerantDual || t == TesterKind::TolerantCumulative;
}

namespace detail {

// Shortest round-tripping decimal form, shared by the CSV writer so that
// identical runs produce identical bytes.
inline std::string format_double(double x) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

}  // namespace detail

// Full description of one experiment: which tester, under which access
// model, against which hidden instance, with how many trials. Trial t runs
// with session seed mix_seed(seed, t), so reports are reproducible from the
// config alone and trial order never matters.
struct ExperimentConfig {
  TesterKind tester = TesterKind::CondPolylog;
  Model model = Model::Cond;
  InstanceSpec instance;
  TestParams params;
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  Constants constants;
  bool timing = false;  // when false, wall_ms stays 0 and reruns are byte-identical

  // Rejects impossible configurations before any trial spends queries.
  void validate() const {
    if (trials < 1) throw config_error("experiment: trials must be >= 1");
    if (instance.n < 1) throw config_error("experiment: instance needs n >= 1");
    if (!tester_allows_model(tester, model))
      throw config_error(std::string("experiment: tester '") +
                         tester_name(tester) + "' cannot run under model '" +
                         model_name(model) + "'");
    if (tester_is_tolerant(tester)) {
      ToleranceParams{params.eps1, params.eps2, params.gamma}.validate();
    } else if (!(params.eps > 0.0) || !(params.eps < 1.0) ||
               !std::isfinite(params.eps)) {
      throw config_error("experiment: eps must lie in (0, 1)");
    }
  }

  nlohmann::json to_json() const {
    return nlohmann::json{{"tester", tester_name(tester)},
                          {"model", model_name(model)},
                          {"instance", instance.to_json()},
                          {"eps", params.eps},
                          {"eps1", params.eps1},
                          {"eps2", params.eps2},
                          {"gamma", params.gamma},
                          {"trials", trials},
                          {"seed", seed},
                          {"timing", timing},
                          {"constants", monotest::to_json(constants)}};
  }

  static ExperimentConfig from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    c.tester = tester_from_name(j.at("tester").get<std::string>());
    c.model = model_from_name(j.at("model").get<std::string>());
    const auto& ji = j.at("instance");
    c.instance.family = ji.at("family").get<std::string>();
    c.instance.n = ji.at("n").get<std::int64_t>();
    c.instance.seed = ji.at("seed").get<std::uint64_t>();
    if (ji.contains("params"))
      for (const auto& [k, v] : ji.at("params").items())
        c.instance.params[k] = v.get<double>();
    c.params.eps = j.at("eps").get<double>();
    c.params.eps1 = j.at("eps1").get<double>();
    c.params.eps2 = j.at("eps2").get<double>();
    c.params.gamma = j.at("gamma").get<double>();
    c.trials = j.at("trials").get<std::int64_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.timing = j.value("timing", false);
    if (j.contains("constants"))
      for (const auto& [k, v] : j.at("constants").items())
        c.constants.apply(k, v.get<double>());
    return c;
  }
};

// The query envelope every trial of this experiment is held to.
inline double experiment_budget(const ExperimentConfig& cfg) {
  if (tester_is_tolerant(cfg.tester))
    return budget_envelope(cfg.tester, cfg.instance.n, cfg.params.eps2,
                           cfg.constants, cfg.params.gamma);
  return budget_envelope(cfg.tester, cfg.instance.n, cfg.params.eps,
                         cfg.constants);
}

// One trial's outcome. wall_ms is 0 unless the config enables timing.
struct ReportRow {
  std::int64_t trial = 0;
  std::uint64_t seed = 0;
  bool accept = false;
  QueryLog queries;
  std::string rejectingStep;
  double wall_ms = 0.0;

  bool operator==(const ReportRow& o) const = default;

  nlohmann::json to_json() const {
    return nlohmann::json{{"trial", trial},
                          {"seed", seed},
                          {"decision", accept ? "accept" : "reject"},
                          {"rejecting_step", rejectingStep},
                          {"wall_ms", wall_ms},
                          {"queries",
                           {{"samp", queries.samp},
                            {"cond", queries.cond},
                            {"intcond", queries.intcond},
                            {"paircond", queries.paircond},
                            {"eval", queries.eval},
                            {"ceval", queries.ceval},
                            {"total", queries.total()}}}};
  }

  static ReportRow from_json(const nlohmann::json& j) {
    ReportRow r;
    r.trial = j.at("trial").get<std::int64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.accept = j.at("decision").get<std::string>() == "accept";
    r.rejectingStep = j.at("rejecting_step").get<std::string>();
    r.wall_ms = j.at("wall_ms").get<double>();
    const auto& q = j.at("queries");
    r.queries.samp = q.at("samp").get<std::uint64_t>();
    r.queries.cond = q.at("cond").get<std::uint64_t>();
    r.queries.intcond = q.at("intcond").get<std::uint64_t>();
    r.queries.paircond = q.at("paircond").get<std::uint64_t>();
    r.queries.eval = q.at("eval").get<std::uint64_t>();
    r.queries.ceval = q.at("ceval").get<std::uint64_t>();
    return r;
  }
};

// Summary statistics derived from the rows; never stored independently, so
// they cannot drift out of sync with the per-trial data.
struct Aggregates {
  static constexpr std::array<const char*, 7> kindNames = {
      "samp", "cond", "intcond", "paircond", "eval", "ceval", "total"};

  std::int64_t trials = 0;
  std::int64_t accepts = 0;
  double acceptFraction = 0.0;
  double budget = 0.0;
  std::array<double, 7> meanQueries{};
  std::array<std::uint64_t, 7> maxQueries{};
  std::map<std::string, std::int64_t> rejectingSteps;

  nlohmann::json to_json() const {
    nlohmann::json mean = nlohmann::json::object();
    nlohmann::json mx = nlohmann::json::object();
    for (std::size_t i = 0; i < kindNames.size(); ++i) {
      mean[kindNames[i]] = meanQueries[i];
      mx[kindNames[i]] = maxQueries[i];
    }
    nlohmann::json steps = nlohmann::json::object();
    for (const auto& [k, v] : rejectingSteps) steps[k] = v;
    return nlohmann::json{{"trials", trials},
                          {"accepts", accepts},
                          {"accept_fraction", acceptFraction},
                          {"budget", budget},
                          {"mean_queries", mean},
                          {"max_queries", mx},
                          {"rejecting_steps", steps}};
  }
};

// A full experiment result: the config that produced it plus one row per
// trial, in trial order.
struct Report {
  ExperimentConfig config;
  std::vector<ReportRow> rows;

  bool operator==(const Report& o) const {
    return config.to_json() == o.config.to_json() && rows == o.rows;
  }

  Aggregates aggregates() const {
    Aggregates a;
    a.trials = static_cast<std::int64_t>(rows.size());
    a.budget = experiment_budget(config);
    std::array<std::uint64_t, 7> sums{};
    for (const auto& r : rows) {
      if (r.accept) {
        a.accepts++;
      } else {
        a.rejectingSteps[r.rejectingStep]++;
      }
      const std::array<std::uint64_t, 7> counts = {
          r.queries.samp, r.queries.cond,  r.queries.intcond,
          r.queries.paircond, r.queries.eval, r.queries.ceval,
          r.queries.total()};
      for (std::size_t i = 0; i < counts.size(); ++i) {
        sums[i] += counts[i];
        a.maxQueries[i] = std::max(a.maxQueries[i], counts[i]);
      }
    }
    if (a.trials > 0) {
      a.acceptFraction =
          static_cast<double>(a.accepts) / static_cast<double>(a.trials);
      for (std::size_t i = 0; i < sums.size(); ++i)
        a.meanQueries[i] =
            static_cast<double>(sums[i]) / static_cast<double>(a.trials);
    }
    return a;
  }

  nlohmann::json to_json() const {
    nlohmann::json jr = nlohmann::json::array();
    for (const auto& r : rows) jr.push_back(r.to_json());
    return nlohmann::json{{"schema", "v1"},
                          {"config", config.to_json()},
                          {"rows", std::move(jr)},
                          {"aggregates", aggregates().to_json()}};
  }

  static Report from_json(const nlohmann::json& j) {
    if (j.at("schema").get<std::string>() != "v1")
      throw config_error("report: unsupported schema version '" +
                         j.at("schema").get<std::string>() + "'");
    Report r;
    r.config = ExperimentConfig::from_json(j.at("config"));
    for (const auto& jr : j.at("rows")) r.rows.push_back(ReportRow::from_json(jr));
    return r;
  }

  // Header line plus one line per trial.
  std::string to_csv() const {
    std::string out =
        "trial,seed,decision,samp,cond,intcond,paircond,eval,ceval,total,"
        "rejecting_step,wall_ms\n";
    for (const auto& r : rows) {
      out += std::to_string(r.trial);
      out += ',';
      out += std::to_string(r.seed);
      out += ',';
      out += r.accept ? "accept" : "reject";
      out += ',';
      out += std::to_string(r.queries.samp);
      out += ',';
      out += std::to_string(r.queries.cond);
      out += ',';
      out += std::to_string(r.queries.intcond);
      out += ',';
      out += std::to_string(r.queries.paircond);
      out += ',';
      out += std::to_string(r.queries.eval);
      out += ',';
      out += std::to_string(r.queries.ceval);
      out += ',';
      out += std::to_string(r.queries.total());
      out += ',';
      out += r.rejectingStep;
      out += ',';
      out += detail::format_double(r.wall_ms);
      out += '\n';
    }
    return out;
  }
};

// Worker-pool width: hardware concurrency, optionally capped by the
// MONOTEST_THREADS environment variable, never wider than the trial count.
inline int harness_threads(std::int64_t trials) {
  unsigned hw = std::thread::hardware_concurrency();
  std::int64_t cap = hw == 0 ? 1 : static_cast<std::int64_t>(hw);
  if (const char* env = std::getenv("MONOTEST_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1)
      cap = std::min<std::int64_t>(cap, v);
  }
  return static_cast<int>(std::clamp<std::int64_t>(std::min(cap, trials), 1,
                                                   256));
}

namespace detail {

inline ReportRow run_one_trial(const ExperimentConfig& cfg, const Pmf& hidden,
                               std::int64_t trial) {
  ReportRow row;
  row.trial = trial;
  row.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(trial));
  OracleSession s(hidden, cfg.model, row.seed);
  auto t0 = std::chrono::steady_clock::now();
  Verdict v = run_tester(cfg.tester, s, cfg.params, cfg.constants);
  if (cfg.timing)
    row.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  row.accept = v.accept;
  row.queries = v.queries;
  row.rejectingStep = v.rejectingStep;
  return row;
}

}  // namespace detail

// Runs cfg.trials independent trials and collects rows in trial order. Each
// trial gets its own oracle session seeded from (cfg.seed, trial), so the
// result is a pure function of the config regardless of pool width.
// `threads` <= 0 picks the width automatically; an explicit value forces a
// particular pool size (used to exercise the concurrent path in tests).
inline Report run_experiment(const ExperimentConfig& cfg, int threads = 0) {
  cfg.validate();
  Pmf hidden = generate_instance(cfg.instance);
  Report rep;
  rep.config = cfg;
  rep.rows.assign(static_cast<std::size_t>(cfg.trials), ReportRow{});

  int nThreads =
      threads > 0 ? std::clamp(threads, 1, 256) : harness_threads(cfg.trials);
  if (nThreads <= 1) {
    for (std::int64_t t = 0; t < cfg.trials; ++t)
      rep.rows[static_cast<std::size_t>(t)] =
          detail::run_one_trial(cfg, hidden, t);
    return rep;
  }

  std::atomic<std::int64_t> next{0};
  std::mutex errMu;
  std::exception_ptr firstErr;
  auto worker = [&] {
    for (;;) {
      std::int64_t t = next.fetch_add(1);
      if (t >= cfg.trials) return;
      try {
        rep.rows[static_cast<std::size_t>(t)] =
            detail::run_one_trial(cfg, hidden, t);
      } catch (...) {
        std::lock_guard<std::mutex> lk(errMu);
        if (!firstErr) firstErr = std::current_exception();
        next.store(cfg.trials);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nThreads));
  for (int i = 0; i < nThreads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (firstErr) std::rethrow_exception(firstErr);
  return rep;
}

enum class ReportFormat { Json, Csv };

inline ReportFormat report_format_from_name(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  throw config_error("unknown report format '" + s +
                     "' (expected json or csv)");
}

// Writes the report to `path` atomically: the payload lands in a sibling
// temp file first and is renamed over the target, so readers never observe
// a half-written report.
inline void write_report(const Report& r, const std::string& path,
                         ReportFormat format) {
  std::string payload = format == ReportFormat::Json
                            ? r.to_json().dump(2) + "\n"
                            : r.to_csv();
  std::filesystem::path target(path);
  std::filesystem::path tmp(path + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw io_error("cannot open '" + tmp.string() + "' for writing");
    out.write(payload.data(),
              static_cast<std::streamsize>(payload.size()));
    out.flush();
    if (!out) throw io_error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec)
    throw io_error("cannot move '" + tmp.string() + "' into place at '" +
                   target.string() + "': " + ec.message());
}

inline Report read_report_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open report '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw io_error("cannot parse report '" + path + "': " + e.what());
  }
  return Report::from_json(j);
}

}  // namespace monotest
