#pragma once
// Worst-case query budgets. Every tester declares a closed-form envelope in
// n and the accuracy parameter; runs assert their actual query count stays
// inside it. The leading coefficients live in Constants so experiments can
// tighten or loosen them from the command line.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "monotest/common.hpp"
#include "monotest/config.hpp"

namespace monotest {

enum class TesterKind {
  SampMonotone,        // sampling only
  CondPolylog,         // adaptive conditional sampling, polylog(n) regime
  IntCondMonotone,     // interval-conditional sampling
  CondPolyEps,         // conditional sampling, size-independent regime
  EvalMonotone,        // point evaluations only
  CumulativeMonotone,  // sampling plus cumulative evaluations
  TolerantDual,        // tolerant tester, sampling plus point evaluations
  TolerantCumulative,  // tolerant tester, sampling plus cumulative evals
};

inline const char* tester_name(TesterKind t) {
  switch (t) {
    case TesterKind::SampMonotone: return "samp";
    case TesterKind::CondPolylog: return "cond_polylog";
    case TesterKind::IntCondMonotone: return "intcond";
    case TesterKind::CondPolyEps: return "cond_polyeps";
    case TesterKind::EvalMonotone: return "eval";
    case TesterKind::CumulativeMonotone: return "cumulative";
    case TesterKind::TolerantDual: return "tolerant_dual";
    case TesterKind::TolerantCumulative: return "tolerant_cumulative";
  }
  return "?";
}

inline TesterKind tester_from_name(const std::string& s) {
  for (TesterKind t :
       {TesterKind::SampMonotone, TesterKind::CondPolylog,
        TesterKind::IntCondMonotone, TesterKind::CondPolyEps,
        TesterKind::EvalMonotone, TesterKind::CumulativeMonotone,
        TesterKind::TolerantDual, TesterKind::TolerantCumulative}) {
    if (s == tester_name(t)) return t;
  }
  throw config_error("unknown tester: " + s);
}

inline Model default_model(TesterKind t) {
  switch (t) {
    case TesterKind::SampMonotone: return Model::Samp;
    case TesterKind::CondPolylog: return Model::Cond;
    case TesterKind::IntCondMonotone: return Model::IntCond;
    case TesterKind::CondPolyEps: return Model::Cond;
    case TesterKind::EvalMonotone: return Model::Eval;
    case TesterKind::CumulativeMonotone: return Model::CumulativeDual;
    case TesterKind::TolerantDual: return Model::Dual;
    case TesterKind::TolerantCumulative: return Model::CumulativeDual;
  }
  return Model::Samp;
}

inline bool tester_allows_model(TesterKind t, Model m) {
  switch (t) {
    case TesterKind::SampMonotone:
      // Sampling is available under every model.
      return true;
    case TesterKind::CondPolylog:
      // Bisection deciders condition on sub-intervals, which pair access
      // cannot provide.
      return m == Model::Cond;
    case TesterKind::IntCondMonotone:
      return m == Model::IntCond;
    case TesterKind::CondPolyEps:
      // Compares interval unions, so pair access is not enough.
      return m == Model::Cond;
    case TesterKind::EvalMonotone:
      return m == Model::Eval || m == Model::Dual;
    case TesterKind::CumulativeMonotone:
      return m == Model::CumulativeDual;
    case TesterKind::TolerantDual:
      return m == Model::Dual;
    case TesterKind::TolerantCumulative:
      return m == Model::CumulativeDual;
  }
  return false;
}

namespace detail {
inline double lg(double x) { return std::log2(std::max(2.0, x)); }
}  // namespace detail

// Upper bound on total queries for one run. `eps` is the proximity
// parameter; tolerant testers pass their outer parameter (eps2) here and
// additionally `gamma`, since their identity-stage cost scales with the
// relative gap (3 + gamma) / gamma (a tighter gap forces a finer distance
// estimate). Non-tolerant testers ignore `gamma`.
// The size-independent regimes (cond_polyeps, cumulative, and the eval /
// tolerant formulas up to one log n factor) deliberately contain no n term
// beyond that, which the harness exploits to check size independence
// empirically.
inline double budget_envelope(TesterKind t, std::int64_t n, double eps,
                              const Constants& c, double gamma = 1.0) {
  if (!(eps > 0.0 && eps <= 1.0)) throw config_error("budget: bad eps");
  if (n <= 0) throw config_error("budget: bad n");
  if (!(gamma > 0.0)) throw config_error("budget: bad gamma");
  const double nn = static_cast<double>(n);
  const double L = detail::lg(nn);
  const double L2n = detail::lg(2.0 * nn);
  const double invEps = 1.0 / eps;
  const double q = (3.0 + gamma) / gamma;
  switch (t) {
    case TesterKind::SampMonotone:
      return c.b_samp * std::sqrt(nn) * L2n * L2n * std::pow(invEps, 6);
    case TesterKind::CondPolylog:
      return c.b_cond_polylog *
             (L * L * std::pow(invEps, 3) + L * L * L * L * invEps * invEps);
    case TesterKind::IntCondMonotone:
      return c.b_intcond * std::pow(L, 5) * std::pow(invEps, 4);
    case TesterKind::CondPolyEps:
      return c.b_cond_polyeps * (1.0 + std::log(invEps)) *
             std::pow(invEps, 8);
    case TesterKind::EvalMonotone:
      return c.b_eval * std::max(L * invEps, invEps * invEps);
    case TesterKind::CumulativeMonotone:
      return c.b_cumulative * std::max(1.0, std::log(invEps)) *
             std::pow(invEps, 4);
    case TesterKind::TolerantDual:
      return c.b_tolerant_samp * L * std::pow(invEps, 3) +
             c.b_tolerant_eval * q * q * invEps * invEps;
    case TesterKind::TolerantCumulative:
      // No sampling term: the tester learns the flattening exactly from
      // cumulative evaluations and never draws a sample.
      return c.b_tolerant_ceval * (q * q * invEps * invEps + q * L * invEps);
  }
  throw config_error("budget: unknown tester");
}

inline void ensure_budget(TesterKind t, const QueryLog& log, double bound) {
  if (static_cast<double>(log.total()) > bound) {
    throw numeric_error(std::string("budget exceeded for ") + tester_name(t) +
                        ": used " + std::to_string(log.total()) +
                        " of " + std::to_string(bound));
  }
}

}  // namespace monotest
