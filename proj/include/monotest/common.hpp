#pragma once

// Shared plumbing: error types, oracle access models, query accounting.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace monotest {

// Raised for malformed user/config input (bad parameters, unknown names,
// inconsistent tolerance pairs). The CLI maps this to exit code 2.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an algorithm issues a query its access model does not grant.
class policy_error : public std::logic_error {
 public:
  explicit policy_error(const std::string& what) : std::logic_error(what) {}
};

// Raised by conditional oracles when the conditioning set has zero mass.
class zero_mass_error : public std::runtime_error {
 public:
  explicit zero_mass_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Raised on internal numeric failures (e.g. an infeasible linear program).
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a report file cannot be written or read; the message always
// carries the offending path.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

enum class QueryKind { Samp, Cond, IntCond, PairCond, Eval, Ceval };

inline const char* query_kind_name(QueryKind k) {
  switch (k) {
    case QueryKind::Samp: return "samp";
    case QueryKind::Cond: return "cond";
    case QueryKind::IntCond: return "intcond";
    case QueryKind::PairCond: return "paircond";
    case QueryKind::Eval: return "eval";
    case QueryKind::Ceval: return "ceval";
  }
  return "?";
}

// Access models an oracle session can be opened under. Conditional models
// also grant plain sampling (condition on the whole domain); the two dual
// models pair sampling with pointwise or cumulative evaluation.
enum class Model { Samp, Cond, IntCond, PairCond, Eval, Dual, CumulativeDual };

inline const char* model_name(Model m) {
  switch (m) {
    case Model::Samp: return "samp";
    case Model::Cond: return "cond";
    case Model::IntCond: return "intcond";
    case Model::PairCond: return "paircond";
    case Model::Eval: return "eval";
    case Model::Dual: return "dual";
    case Model::CumulativeDual: return "cumulative";
  }
  return "?";
}

inline Model model_from_name(const std::string& s) {
  if (s == "samp") return Model::Samp;
  if (s == "cond") return Model::Cond;
  if (s == "intcond") return Model::IntCond;
  if (s == "paircond") return Model::PairCond;
  if (s == "eval") return Model::Eval;
  if (s == "dual") return Model::Dual;
  if (s == "cumulative") return Model::CumulativeDual;
  throw config_error("unknown access model: " + s);
}

inline bool model_allows(Model m, QueryKind k) {
  switch (m) {
    case Model::Samp: return k == QueryKind::Samp;
    case Model::Cond: return k == QueryKind::Samp || k == QueryKind::Cond;
    case Model::IntCond: return k == QueryKind::Samp || k == QueryKind::IntCond;
    case Model::PairCond:
      return k == QueryKind::Samp || k == QueryKind::PairCond;
    case Model::Eval: return k == QueryKind::Eval;
    case Model::Dual: return k == QueryKind::Samp || k == QueryKind::Eval;
    case Model::CumulativeDual:
      return k == QueryKind::Samp || k == QueryKind::Ceval;
  }
  return false;
}

// Per-kind query counters. One oracle call increments exactly one counter.
struct QueryLog {
  std::uint64_t samp = 0;
  std::uint64_t cond = 0;
  std::uint64_t intcond = 0;
  std::uint64_t paircond = 0;
  std::uint64_t eval = 0;
  std::uint64_t ceval = 0;

  std::uint64_t total() const {
    return samp + cond + intcond + paircond + eval + ceval;
  }
  std::uint64_t get(QueryKind k) const {
    switch (k) {
      case QueryKind::Samp: return samp;
      case QueryKind::Cond: return cond;
      case QueryKind::IntCond: return intcond;
      case QueryKind::PairCond: return paircond;
      case QueryKind::Eval: return eval;
      case QueryKind::Ceval: return ceval;
    }
    return 0;
  }
  QueryLog operator-(const QueryLog& o) const {
    return {samp - o.samp, cond - o.cond,     intcond - o.intcond,
            paircond - o.paircond, eval - o.eval, ceval - o.ceval};
  }
  bool operator==(const QueryLog& o) const = default;
};

// Compensated accumulation; keeps mass bookkeeping stable at n ~ 2^20.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

}  // namespace monotest
