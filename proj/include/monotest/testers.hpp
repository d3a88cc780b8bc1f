#pragma once

// Monotonicity testers, one per access model, plus two tolerant variants
// and the growth-property tester for reduced distributions. Every tester
// validates its configuration before touching the oracle, returns a
// Verdict carrying the decision / consumed queries / which step rejected,
// and enforces its query-budget envelope on exit.
//
// Shared conventions:
//  * all distance thresholds reject on strict `>`;
//  * alpha = eps/4 wherever a tester flattens the domain;
//  * a conditional query on a zero-mass set counts as a rejection;
//  * growth-ratio checks use the per-position caps r_k = s_{k+1}/s_k
//    (the exact constraint block masses of monotone distributions obey),
//    with relative slack eps/2 and comparison accuracy eta = eps/4.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "monotest/budgets.hpp"
#include "monotest/common.hpp"
#include "monotest/config.hpp"
#include "monotest/distance.hpp"
#include "monotest/oracle.hpp"
#include "monotest/partition.hpp"
#include "monotest/pmf.hpp"
#include "monotest/subroutines.hpp"

namespace monotest {

// Proximity parameters for a run: plain testers read `eps`, tolerant
// testers read the (eps1, eps2, gamma) triple.
struct TestParams {
  double eps = 0.25;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double gamma = 0.0;
};

// Tolerant-testing configuration with its derived thresholds. The run is
// configured by (eps1, eps2, gamma); the tester distinguishes
// "eps1-close" from "eps2-far" whenever eps2 > (3 + gamma) * eps1.
struct ToleranceParams {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double gamma = 0.0;

  double alpha() const { return gamma / (6.0 * (3.0 + gamma)); }
  double gamma1() const { return 2.0 * eps1 + 2.0 * alpha() * eps2; }
  double gamma2() const { return (1.0 - alpha()) * eps2 - eps1; }

  // Throws config_error (before any query is spent) when the triple does
  // not describe a separable tolerant-testing task.
  void validate() const {
    if (!(eps1 > 0.0) || !(eps2 < 1.0) || !(gamma > 0.0) ||
        !std::isfinite(eps1 + eps2 + gamma))
      throw config_error("tolerance: need eps1 > 0, eps2 < 1, gamma > 0");
    if (!(eps2 > (3.0 + gamma) * eps1))
      throw config_error("tolerance: need eps2 > (3 + gamma) * eps1");
    if (!(gamma2() - gamma1() > 0.0))
      throw config_error("tolerance: identity-test gap is not positive");
  }
};

struct Verdict {
  bool accept = false;
  QueryLog queries;           // queries consumed by this run
  double budget = 0.0;        // configured envelope the run was held to
  std::string rejectingStep;  // empty iff accept
  nlohmann::json details = nlohmann::json::object();

  nlohmann::json to_json() const {
    return nlohmann::json{
        {"decision", accept ? "accept" : "reject"},
        {"rejecting_step", rejectingStep},
        {"budget", budget},
        {"queries",
         {{"samp", queries.samp},
          {"cond", queries.cond},
          {"intcond", queries.intcond},
          {"paircond", queries.paircond},
          {"eval", queries.eval},
          {"ceval", queries.ceval},
          {"total", queries.total()}}},
        {"details", details}};
  }
};

namespace detail {

inline void require_model(TesterKind t, const OracleSession& s) {
  if (!tester_allows_model(t, s.model()))
    throw config_error(std::string("tester '") + tester_name(t) +
                       "' cannot run under access model '" +
                       model_name(s.model()) + "'");
}

inline void require_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw config_error("tester: eps must lie in (0, 1)");
}

// Refinement cap shared by the bisection testers:
// ell_max = ceil(c_s * log2(n)^2 / eps).
inline std::uint64_t refinement_cap(std::int64_t n, double eps,
                                    const Constants& c) {
  const double L = lg(static_cast<double>(n));
  return static_cast<std::uint64_t>(std::ceil(c.c_s * L * L / eps));
}

// Attach consumed queries and enforce the envelope; `eps` is the
// proximity parameter the envelope formula expects (eps2 for tolerant,
// which also forwards its gamma).
inline Verdict seal(TesterKind t, OracleSession& s, const QueryLog& before,
                    double eps, const Constants& c, bool accept,
                    std::string step, nlohmann::json details,
                    double gamma = 1.0) {
  Verdict v;
  v.accept = accept;
  v.queries = s.log() - before;
  v.budget = budget_envelope(t, s.n(), eps, c, gamma);
  v.rejectingStep = accept ? std::string() : std::move(step);
  v.details = std::move(details);
  ensure_budget(t, v.queries, v.budget);
  return v;
}

// Empirical block histogram from `draws` unconditioned samples.
inline Histogram empirical_histogram(OracleSession& s,
                                     const IntervalPartition& part,
                                     std::uint64_t draws) {
  std::vector<std::uint64_t> counts(part.blocks(), 0);
  for (std::uint64_t t = 0; t < draws; ++t) counts[part.block_of(s.samp())]++;
  std::vector<double> mass(part.blocks());
  for (std::size_t k = 0; k < part.blocks(); ++k)
    mass[k] =
        static_cast<double>(counts[k]) / static_cast<double>(draws);
  return Histogram(part, std::move(mass));
}

struct BisectionOutcome {
  bool rejected = false;
  std::string step;  // set when rejected
  std::uint64_t nodes = 0;
  IntervalPartition leaves;  // tiles [1, n]; meaningful when !rejected
};

// Recursive bisection driven by the near-uniform decider. Halves holding
// none of the reference points are light: they become leaves untested and
// receive their weight from the final empirical histogram. Processing
// more than `lmax` intervals rejects outright.
inline BisectionOutcome bisect_with_decider(
    OracleSession& s, double eps, std::uint64_t lmax,
    const std::vector<std::int64_t>& refs, const Constants& c) {
  const double delta = 1.0 / (10.0 * static_cast<double>(lmax));
  std::vector<std::pair<std::int64_t, std::int64_t>> leaves;
  std::vector<std::pair<std::int64_t, std::int64_t>> stack{{1, s.n()}};
  std::uint64_t nodes = 0;
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    if (++nodes > lmax) return {true, "tree_budget", nodes, {}};
    const bool hasRef =
        std::lower_bound(refs.begin(), refs.end(), a) !=
        std::upper_bound(refs.begin(), refs.end(), b);
    if (!hasRef || a == b) {  // light, or a trivially uniform singleton
      leaves.emplace_back(a, b);
      continue;
    }
    bool uniformish = false;
    try {
      uniformish = near_uniform_decider(s, a, b, eps, delta, c);
    } catch (const zero_mass_error&) {
      return {true, "zero_mass", nodes, {}};
    }
    if (uniformish) {
      leaves.emplace_back(a, b);
      continue;
    }
    std::int64_t mid = a + (b - a) / 2;
    stack.emplace_back(mid + 1, b);
    stack.emplace_back(a, mid);
  }
  std::sort(leaves.begin(), leaves.end());
  std::vector<std::int64_t> bounds{0};
  bounds.reserve(leaves.size() + 1);
  for (const auto& [a, b] : leaves) bounds.push_back(b);
  return {false, std::string(), nodes,
          IntervalPartition(s.n(), std::move(bounds))};
}

// Common body of the conditional bisection testers (full-interval and
// interval-restricted conditioning differ only in the decider's draws).
inline Verdict run_bisection_tester(TesterKind kind, OracleSession& s,
                                    double eps, const Constants& c) {
  require_model(kind, s);
  require_eps(eps);
  const QueryLog before = s.log();
  const std::int64_t n = s.n();
  if (n == 1)
    return seal(kind, s, before, eps, c, true, {}, {{"trivial", true}});
  const std::uint64_t lmax = refinement_cap(n, eps, c);
  const auto m = static_cast<std::uint64_t>(std::ceil(
      c.c_h * (static_cast<double>(lmax) / eps) *
      std::log2(static_cast<double>(lmax) + 2.0)));
  std::vector<std::int64_t> refs(m);
  for (auto& r : refs) r = s.samp();
  std::sort(refs.begin(), refs.end());
  auto tree = bisect_with_decider(s, eps, lmax, refs, c);
  if (tree.rejected)
    return seal(kind, s, before, eps, c, false, tree.step,
                {{"nodes", tree.nodes}});
  const auto T = static_cast<std::uint64_t>(std::ceil(
      c.c_T * std::pow(lg(static_cast<double>(n)), 4) / (eps * eps)));
  Histogram hist = empirical_histogram(s, tree.leaves, T);
  const double lp = distance_to_monotone_flat(hist);
  const bool ok = !(lp > eps / 2.0);
  return seal(kind, s, before, eps, c, ok, ok ? "" : "learned_histogram_far",
              {{"nodes", tree.nodes},
               {"leaves", tree.leaves.blocks()},
               {"lp_distance", lp}});
}

}  // namespace detail

// --------------------------------------------------- sampling-only test --

// Recursive bisection over one shared sample pool: per-interval
// uniformity is screened by the collision statistic of the pool points
// falling inside, intervals holding less than an eps/(4 lmax) share of
// the pool are light leaves, and exceeding lmax processed intervals
// rejects. Survivors are flattened onto the leaf partition from fresh
// samples and accepted iff the learned histogram is eps/2-close to
// monotone.
inline Verdict test_monotone_samp(OracleSession& s, double eps,
                                  const Constants& c) {
  detail::require_model(TesterKind::SampMonotone, s);
  detail::require_eps(eps);
  const QueryLog before = s.log();
  const std::int64_t n = s.n();
  if (n == 1)
    return detail::seal(TesterKind::SampMonotone, s, before, eps, c, true, {},
                        {{"trivial", true}});
  const std::uint64_t lmax = detail::refinement_cap(n, eps, c);
  const auto poolSize = static_cast<std::uint64_t>(std::ceil(
      c.c_pool * std::sqrt(static_cast<double>(n)) *
      std::log2(2.0 * static_cast<double>(n)) / std::pow(eps, 4)));
  std::vector<std::int64_t> pool(poolSize);
  for (auto& p : pool) p = s.samp();
  std::sort(pool.begin(), pool.end());
  const double lightShare =
      eps * static_cast<double>(poolSize) / (4.0 * static_cast<double>(lmax));

  std::vector<std::pair<std::int64_t, std::int64_t>> leaves;
  std::vector<std::pair<std::int64_t, std::int64_t>> stack{{1, n}};
  std::uint64_t nodes = 0;
  bool overBudget = false;
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    if (++nodes > lmax) {
      overBudget = true;
      break;
    }
    auto first = std::lower_bound(pool.begin(), pool.end(), a);
    auto last = std::upper_bound(first, pool.end(), b);
    const auto t = static_cast<std::uint64_t>(last - first);
    if (a == b || static_cast<double>(t) < lightShare) {
      leaves.emplace_back(a, b);
      continue;
    }
    std::uint64_t collisions = 0, run = 1;
    for (auto it = first + 1; it <= last; ++it) {
      if (it != last && *it == *(it - 1)) {
        ++run;
      } else {
        collisions += run * (run - 1) / 2;
        run = 1;
      }
    }
    if (near_uniform_collisions(collisions, t, b - a + 1, eps, c)) {
      leaves.emplace_back(a, b);
      continue;
    }
    std::int64_t mid = a + (b - a) / 2;
    stack.emplace_back(mid + 1, b);
    stack.emplace_back(a, mid);
  }
  if (overBudget)
    return detail::seal(TesterKind::SampMonotone, s, before, eps, c, false,
                        "tree_budget", {{"nodes", nodes}});
  std::sort(leaves.begin(), leaves.end());
  std::vector<std::int64_t> bounds{0};
  for (const auto& [a, b] : leaves) bounds.push_back(b);
  IntervalPartition part(n, std::move(bounds));
  const auto learnDraws = static_cast<std::uint64_t>(std::ceil(
      c.c_h * static_cast<double>(lmax) *
      std::log2(static_cast<double>(lmax) + 2.0) / (eps * eps)));
  Histogram hist = detail::empirical_histogram(s, part, learnDraws);
  const double lp = distance_to_monotone_flat(hist);
  const bool ok = !(lp > eps / 2.0);
  return detail::seal(TesterKind::SampMonotone, s, before, eps, c, ok,
                      ok ? "" : "learned_histogram_far",
                      {{"nodes", nodes},
                       {"leaves", part.blocks()},
                       {"lp_distance", lp}});
}

// ------------------------------------------- conditional bisection tests --

inline Verdict test_monotone_cond_polylog(OracleSession& s, double eps,
                                          const Constants& c) {
  return detail::run_bisection_tester(TesterKind::CondPolylog, s, eps, c);
}

inline Verdict test_monotone_intcond(OracleSession& s, double eps,
                                     const Constants& c) {
  return detail::run_bisection_tester(TesterKind::IntCondMonotone, s, eps, c);
}

// ------------------------------------------------ growth-property tests --

// eps-tester for the growth property Q(k+1) <= (1+alpha) Q(k) of a
// distribution on [l], for pair-conditional (or richer) access: sample
// positions, compare each sampled position's mass against its left
// neighbor, reject on a High outcome or a ratio estimate above the
// slackened cap. No envelope is enforced (the op is a building block; its
// cost is m = ceil(c_e/(eps alpha)) comparisons of
// ceil(c_cmp_exp K ln(10m)/(eps/4)^2) draws each).
inline Verdict test_exponential_property(OracleSession& s, double alpha,
                                         double eps, const Constants& c) {
  if (s.model() != Model::PairCond && s.model() != Model::Cond)
    throw config_error(
        "test_exponential_property: needs pair or full conditional access");
  detail::require_eps(eps);
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw config_error("test_exponential_property: alpha must be positive");
  const QueryLog before = s.log();
  const auto m = static_cast<std::uint64_t>(
      std::ceil(c.c_e / (eps * alpha)));
  const double delta = 1.0 / (10.0 * static_cast<double>(m));
  const double eta = eps / 4.0;
  const double bigK = 2.0 * (1.0 + alpha);
  const double cap = (1.0 + alpha) * (1.0 + eps / 2.0);
  Verdict v;
  v.accept = true;
  for (std::uint64_t i = 0; i < m; ++i) {
    std::int64_t x = s.samp();
    if (x == 1) continue;
    auto r = compare(s, QuerySet::interval(x - 1, x - 1),
                     QuerySet::interval(x, x), eta, bigK, delta, c.c_cmp_exp);
    if (r.outcome == CompareOutcome::High ||
        (r.outcome == CompareOutcome::Ratio && r.rho > cap)) {
      v.accept = false;
      v.rejectingStep = "growth_witness";
      v.details = {{"position", x}};
      break;
    }
  }
  v.queries = s.log() - before;
  return v;
}

// Conditional-access monotonicity tester whose query count is independent
// of n: flatten at alpha = eps/4, screen the reduced distribution's
// growth ratios through block-pair comparisons (per-position caps), then
// estimate the distance to the flattening and reject when it exceeds
// 3 eps/8.
inline Verdict test_monotone_cond_polyeps(OracleSession& s, double eps,
                                          const Constants& c) {
  detail::require_model(TesterKind::CondPolyEps, s);
  detail::require_eps(eps);
  const QueryLog before = s.log();
  const double alpha = eps / 4.0;
  auto part = oblivious_partition(s.n(), alpha);
  const auto m = static_cast<std::uint64_t>(
      std::ceil(c.c_e / (eps * alpha)));
  const double delta = 1.0 / (10.0 * static_cast<double>(m));
  const double eta = eps / 4.0;
  const double bigK = 2.0 * (1.0 + alpha);
  for (std::uint64_t i = 0; i < m; ++i) {
    std::int64_t x = s.samp();
    std::size_t j = part.block_of(x);
    if (j == 0) continue;
    auto xSet = QuerySet::interval(part.lo(j - 1), part.hi(j - 1));
    auto ySet = QuerySet::interval(part.lo(j), part.hi(j));
    auto r = compare(s, xSet, ySet, eta, bigK, delta, c.c_cmp_exp);
    const double cap = static_cast<double>(part.block_size(j)) /
                       static_cast<double>(part.block_size(j - 1));
    if (r.outcome == CompareOutcome::High ||
        (r.outcome == CompareOutcome::Ratio &&
         r.rho > cap * (1.0 + eps / 2.0))) {
      return detail::seal(TesterKind::CondPolyEps, s, before, eps, c, false,
                          "growth_witness",
                          {{"block", j}, {"cap", cap}});
    }
  }
  const double dhat =
      estimate_dist_to_flattening_cond(s, alpha, eps / 8.0, c);
  const bool ok = !(dhat > 3.0 * eps / 8.0);
  return detail::seal(TesterKind::CondPolyEps, s, before, eps, c, ok,
                      ok ? "" : "flattening_far",
                      {{"flattening_distance", dhat}});
}

// ----------------------------------------------------- evaluation test --

// Non-adaptive evaluation-only tester: read the midpoint histogram at
// alpha = eps/4 (fixed positions), check offline that it is eps/4-close
// to monotone, and estimate the distance between the hidden distribution
// and the learned histogram at fixed stratified positions. Both stages
// always run, so the query transcript is a function of (n, eps, seed)
// alone; the decision is assembled afterwards.
inline Verdict test_monotone_eval(OracleSession& s, double eps,
                                  const Constants& c) {
  detail::require_model(TesterKind::EvalMonotone, s);
  detail::require_eps(eps);
  const QueryLog before = s.log();
  const double alpha = eps / 4.0;
  Histogram learned = learn_histogram_eval(s, alpha);
  const double lp = distance_to_monotone_flat(learned);
  const double dhat =
      estimate_tv_to_histogram_eval_fixed(s, learned, eps / 4.0, c);
  bool ok = true;
  std::string step;
  if (lp > eps / 4.0) {
    ok = false;
    step = "learned_histogram_far";
  } else if (dhat > eps / 2.0) {
    ok = false;
    step = "identity_mismatch";
  }
  return detail::seal(TesterKind::EvalMonotone, s, before, eps, c, ok, step,
                      {{"lp_distance", lp}, {"tv_estimate", dhat}});
}

// ------------------------------------------------ cumulative-dual test --

// Sampling + cumulative evaluation: sampled positions whose block mass
// exceeds the per-position growth cap over the left neighbor (both masses
// read exactly off the cdf) are witnesses against monotonicity; absent a
// witness, the distance to the flattening is estimated and compared
// against eps/2. Exactly monotone inputs produce no witnesses.
inline Verdict test_monotone_cumulative(OracleSession& s, double eps,
                                        const Constants& c) {
  detail::require_model(TesterKind::CumulativeMonotone, s);
  detail::require_eps(eps);
  const QueryLog before = s.log();
  const double alpha = eps / 4.0;
  auto part = oblivious_partition(s.n(), alpha);
  const auto checks = static_cast<std::uint64_t>(
      std::ceil(c.c_w / (alpha * eps)));
  for (std::uint64_t i = 0; i < checks; ++i) {
    std::int64_t x = s.samp();
    std::size_t j = part.block_of(x);
    if (j == 0) continue;
    const double cumPrevLo = s.ceval(part.lo(j - 1) - 1);
    const double cumPrevHi = s.ceval(part.hi(j - 1));
    const double cumHi = s.ceval(part.hi(j));
    const double qPrev = cumPrevHi - cumPrevLo;
    const double qCur = cumHi - cumPrevHi;
    const double cap = static_cast<double>(part.block_size(j)) /
                       static_cast<double>(part.block_size(j - 1));
    // Relative guard keeps fp dust in the cdf reads from flagging exact
    // members.
    if (qCur > cap * qPrev * (1.0 + 1e-9) + 1e-15) {
      return detail::seal(TesterKind::CumulativeMonotone, s, before, eps, c,
                          false, "witness",
                          {{"block", j},
                           {"mass", qCur},
                           {"previous_mass", qPrev},
                           {"cap", cap}});
    }
  }
  const double dhat =
      estimate_dist_to_flattening_cumulative(s, alpha, eps / 4.0, c);
  const bool ok = !(dhat > eps / 2.0);
  return detail::seal(TesterKind::CumulativeMonotone, s, before, eps, c, ok,
                      ok ? "" : "flattening_far",
                      {{"flattening_distance", dhat}});
}

// ------------------------------------------------------ tolerant tests --

// Sampling + point evaluation, tolerant: learn the flattening at
// alpha(gamma) * eps2 empirically, reject when the learned histogram is
// further than eps1 + alpha eps2 from monotone, then verify the learned
// histogram actually resembles the hidden distribution (distinguishing
// gamma1-close from gamma2-far via point evaluations).
inline Verdict tolerant_test_monotone_dual(OracleSession& s,
                                           const ToleranceParams& tp,
                                           const Constants& c) {
  detail::require_model(TesterKind::TolerantDual, s);
  tp.validate();
  const QueryLog before = s.log();
  const double aPart = tp.alpha() * tp.eps2;
  auto part = oblivious_partition(s.n(), aPart);
  const auto draws = static_cast<std::uint64_t>(std::ceil(
      c.c_t * detail::lg(static_cast<double>(s.n())) /
      std::pow(tp.eps2, 3)));
  Histogram learned = detail::empirical_histogram(s, part, draws);
  const double lp = distance_to_monotone_flat(learned);
  if (lp > tp.eps1 + aPart)
    return detail::seal(TesterKind::TolerantDual, s, before, tp.eps2, c,
                        false, "learned_histogram_far",
                        {{"lp_distance", lp}}, tp.gamma);
  const double accuracy = (tp.gamma2() - tp.gamma1()) / 2.0;
  const double dhat =
      estimate_tv_to_known_eval(s, learned.expand(), accuracy, 1.0 / 6.0, c);
  const double midpoint = (tp.gamma1() + tp.gamma2()) / 2.0;
  const bool ok = !(dhat > midpoint);
  return detail::seal(TesterKind::TolerantDual, s, before, tp.eps2, c, ok,
                      ok ? "" : "identity_mismatch",
                      {{"lp_distance", lp}, {"tv_estimate", dhat}},
                      tp.gamma);
}

// Sampling + cumulative evaluation, tolerant: identical decision rule,
// but the flattening is learned exactly from at most 2 l cdf reads
// (bit-for-bit the arithmetic of distcore's flatten) and the identity
// stage reads point masses as adjacent cdf differences. Draws no samples
// at all.
inline Verdict tolerant_test_monotone_cumulative(OracleSession& s,
                                                 const ToleranceParams& tp,
                                                 const Constants& c) {
  detail::require_model(TesterKind::TolerantCumulative, s);
  tp.validate();
  const QueryLog before = s.log();
  const double aPart = tp.alpha() * tp.eps2;
  auto part = oblivious_partition(s.n(), aPart);
  std::vector<double> mass(part.blocks());
  for (std::size_t k = 0; k < part.blocks(); ++k)
    mass[k] =
        std::max(0.0, s.ceval(part.hi(k)) - s.ceval(part.lo(k) - 1));
  Histogram learned(std::move(part), std::move(mass));
  const double lp = distance_to_monotone_flat(learned);
  // The learned masses ride along so callers can audit that they match
  // the offline flattening bit for bit.
  nlohmann::json details{{"lp_distance", lp},
                         {"learned_mass", learned.blockMass}};
  if (lp > tp.eps1 + aPart)
    return detail::seal(TesterKind::TolerantCumulative, s, before, tp.eps2, c,
                        false, "learned_histogram_far", std::move(details),
                        tp.gamma);
  const double accuracy = (tp.gamma2() - tp.gamma1()) / 2.0;
  const double dhat =
      estimate_tv_to_known_ceval(s, learned.expand(), accuracy, 1.0 / 6.0, c);
  const double midpoint = (tp.gamma1() + tp.gamma2()) / 2.0;
  const bool ok = !(dhat > midpoint);
  details["tv_estimate"] = dhat;
  return detail::seal(TesterKind::TolerantCumulative, s, before, tp.eps2, c,
                      ok, ok ? "" : "identity_mismatch", std::move(details),
                      tp.gamma);
}

// ----------------------------------------------------------- dispatch --

inline Verdict run_tester(TesterKind t, OracleSession& s, const TestParams& p,
                          const Constants& c) {
  switch (t) {
    case TesterKind::SampMonotone:
      return test_monotone_samp(s, p.eps, c);
    case TesterKind::CondPolylog:
      return test_monotone_cond_polylog(s, p.eps, c);
    case TesterKind::IntCondMonotone:
      return test_monotone_intcond(s, p.eps, c);
    case TesterKind::CondPolyEps:
      return test_monotone_cond_polyeps(s, p.eps, c);
    case TesterKind::EvalMonotone:
      return test_monotone_eval(s, p.eps, c);
    case TesterKind::CumulativeMonotone:
      return test_monotone_cumulative(s, p.eps, c);
    case TesterKind::TolerantDual:
      return tolerant_test_monotone_dual(s, {p.eps1, p.eps2, p.gamma}, c);
    case TesterKind::TolerantCumulative:
      return tolerant_test_monotone_cumulative(s, {p.eps1, p.eps2, p.gamma},
                                               c);
  }
  throw config_error("run_tester: unknown tester kind");
}

}  // namespace monotest
