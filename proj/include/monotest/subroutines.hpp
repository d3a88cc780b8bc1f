#pragma once

// Statistical subroutines shared by the testers: conditional two-set
// comparison, near-uniformity deciders for each access model, a
// binary-descent point-mass ratio for interval-conditional access,
// distance estimators, and the deterministic evaluation-based learner.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "monotest/common.hpp"
#include "monotest/config.hpp"
#include "monotest/distance.hpp"
#include "monotest/oracle.hpp"
#include "monotest/partition.hpp"
#include "monotest/pmf.hpp"

namespace monotest {

// ------------------------------------------------------------ compare --

enum class CompareOutcome { High, Low, Ratio };

struct CompareResult {
  CompareOutcome outcome = CompareOutcome::Ratio;
  double rho = 1.0;  // estimate of D(Y)/D(X); meaningful only for Ratio
};

namespace detail {
inline bool is_singleton(const QuerySet& s, std::int64_t& point) {
  const auto& iv = s.intervals();
  if (iv.size() != 1 || iv[0].first != iv[0].second) return false;
  point = iv[0].first;
  return true;
}
}  // namespace detail

// Estimate the mass ratio D(Y)/D(X) of two disjoint sets from
// ceil(cCmp * K * ln(1/delta) / eta^2) conditional draws on X u Y: with
// probability >= 1-delta the result is High (ratio >= ~4K), Low
// (ratio <= ~1/(4K)), or a value within a (1 +/- eta) factor whenever the
// true ratio lies in [1/(2K), 2K].
inline CompareResult compare(OracleSession& s, const QuerySet& x,
                             const QuerySet& y, double eta, double bigK,
                             double delta, double cCmp) {
  if (!(eta > 0) || !(bigK >= 1) || !(delta > 0 && delta < 1) || !(cCmp > 0))
    throw config_error("compare: bad parameters");
  const auto T = static_cast<std::uint64_t>(
      std::ceil(cCmp * bigK * std::log(1.0 / delta) / (eta * eta)));
  auto u = QuerySet::union_of(x, y);
  std::int64_t px = 0, py = 0;
  const bool pairFast = s.model() == Model::PairCond &&
                        detail::is_singleton(x, px) &&
                        detail::is_singleton(y, py);
  std::uint64_t inY = 0;
  for (std::uint64_t t = 0; t < T; ++t) {
    std::int64_t v = pairFast ? s.paircond(px, py) : s.cond(u);
    if (y.contains(v)) ++inY;
  }
  double f = static_cast<double>(inY) / static_cast<double>(T);
  if (f >= 1.0 - 1.0 / (4.0 * bigK)) return {CompareOutcome::High, 0.0};
  if (f <= 1.0 / (4.0 * bigK)) return {CompareOutcome::Low, 0.0};
  return {CompareOutcome::Ratio, f / (1.0 - f)};
}

// ----------------------------------------------- near-uniform deciders --
//
// Decide whether the conditional of the hidden distribution on [a, b] is
// close to uniform: guaranteed (with probability >= 1-delta) to reject
// when tv(D_I, U_I) > eps/4 for deviations visible at interval/pair
// granularity, to accept when max_i |D_I(i) - 1/|I|| <= eps/(16 |I|), and
// free to answer either way in between. Width-1 intervals are accepted
// with zero queries.

// Pair statistic (full conditional access): draw points x ~ D_I and
// y ~ U_I and compare their masses through two-point conditionals. Kept
// as a separately callable realization; the dispatcher below prefers the
// cheaper batched statistic.
inline bool near_uniform_decider_pairs(OracleSession& s, std::int64_t a,
                                       std::int64_t b, double eps, double delta,
                                       const Constants& c) {
  if (a == b) return true;
  const auto pairs =
      static_cast<std::uint64_t>(std::ceil(c.c_u / eps));
  const double eta = c.decider_eta_frac * eps;
  const double window = c.decider_window_frac * eps;
  const double deltaPair = delta / (2.0 * static_cast<double>(pairs));
  auto interval = QuerySet::interval(a, b);
  for (std::uint64_t p = 0; p < pairs; ++p) {
    std::int64_t x = s.cond(interval);
    std::int64_t y = s.algo_rng().uniform_int(a, b);
    if (x == y) continue;  // ratio exactly 1, no queries needed
    auto r = compare(s, QuerySet::pair(x, x), QuerySet::pair(y, y), eta, 2.0,
                     deltaPair, c.c_cmp_decider);
    if (r.outcome != CompareOutcome::Ratio) return false;
    if (std::abs(r.rho - 1.0) > window) return false;
  }
  return true;
}

// Batched statistic (interval or full conditional access): one batch of
// conditional draws, every dyadic subinterval checked against its uniform
// share with Bernstein-sized slack.
inline bool near_uniform_decider_batch(OracleSession& s, std::int64_t a,
                                       std::int64_t b, double eps,
                                       double delta, const Constants& c) {
  if (a == b) return true;
  const auto width = static_cast<std::uint64_t>(b - a + 1);
  const double subCount = 2.0 * static_cast<double>(width);
  const double lambda = std::log(std::max(4.0, 2.0 * subCount / delta));
  const auto T = static_cast<std::uint64_t>(
      std::ceil(c.c_dec_batch * lambda / (eps * eps)));
  const bool viaInterval = s.model() == Model::IntCond;
  auto interval = QuerySet::interval(a, b);
  std::vector<std::uint32_t> counts(width, 0);
  for (std::uint64_t t = 0; t < T; ++t) {
    std::int64_t v = viaInterval ? s.intcond(a, b) : s.cond(interval);
    counts[static_cast<std::size_t>(v - a)]++;
  }
  std::vector<std::uint64_t> prefix(width + 1, 0);
  for (std::uint64_t i = 0; i < width; ++i)
    prefix[i + 1] = prefix[i] + counts[i];
  // Walk the dyadic tree over [0, width).
  struct Node {
    std::uint64_t lo, hi;  // half-open
  };
  std::vector<Node> stack{{0, width}};
  const double dT = static_cast<double>(T);
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    double p = static_cast<double>(hi - lo) / static_cast<double>(width);
    double phat = static_cast<double>(prefix[hi] - prefix[lo]) / dT;
    double noise = std::sqrt(2.0 * p * lambda / dT) + 2.0 * lambda / dT;
    if (std::abs(phat - p) > eps * p / 8.0 + noise) return false;
    if (hi - lo >= 2) {
      std::uint64_t mid = lo + (hi - lo) / 2;
      stack.push_back({lo, mid});
      stack.push_back({mid, hi});
    }
  }
  return true;
}

// Collision-statistic acceptance rule used by the sampling-only tester:
// given the number of equal pairs among `draws` samples from the
// conditional on an interval of the given width, accept when the
// estimated squared l2 norm is within (1 + c_col eps^2)/width.
inline bool near_uniform_collisions(std::uint64_t collisions,
                                    std::uint64_t draws, std::int64_t width,
                                    double eps, const Constants& c) {
  if (width <= 1) return true;
  if (draws < 2) return true;  // no evidence against uniformity
  double pairs = 0.5 * static_cast<double>(draws) *
                 static_cast<double>(draws - 1);
  double est = static_cast<double>(collisions) / pairs;
  double excess = est * static_cast<double>(width) - 1.0;
  return excess <= c.c_col * eps * eps;
}

// Sampling-only variant: filter an unconditioned pool into the interval
// and apply the collision rule. Best effort by necessity -- when too few
// pool points land inside (mass below the pool's resolution) it accepts,
// since sampling access cannot refute conditional uniformity there.
inline bool near_uniform_decider_samp(OracleSession& s, std::int64_t a,
                                      std::int64_t b, double eps,
                                      const Constants& c) {
  if (a == b) return true;
  const double width = static_cast<double>(b - a + 1);
  const auto T = static_cast<std::uint64_t>(
      std::ceil(c.c_pool * std::sqrt(width) * std::log2(2.0 * width) /
                std::pow(eps, 4)));
  std::vector<std::int64_t> in;
  for (std::uint64_t t = 0; t < T; ++t) {
    std::int64_t v = s.samp();
    if (v >= a && v <= b) in.push_back(v);
  }
  if (in.size() < 16) return true;
  std::sort(in.begin(), in.end());
  std::uint64_t collisions = 0, run = 1;
  for (std::size_t i = 1; i <= in.size(); ++i) {
    if (i < in.size() && in[i] == in[i - 1]) {
      ++run;
    } else {
      collisions += run * (run - 1) / 2;
      run = 1;
    }
  }
  return near_uniform_collisions(collisions, in.size(), b - a + 1, eps, c);
}

// Model-dispatching front end (width-1 intervals accept with no queries).
inline bool near_uniform_decider(OracleSession& s, std::int64_t a,
                                 std::int64_t b, double eps, double delta,
                                 const Constants& c) {
  if (!(eps > 0) || !(delta > 0 && delta < 1) || a > b)
    throw config_error("near_uniform_decider: bad parameters");
  if (a == b) return true;
  switch (s.model()) {
    case Model::Samp:
      return near_uniform_decider_samp(s, a, b, eps, c);
    case Model::Cond:
    case Model::IntCond:
      return near_uniform_decider_batch(s, a, b, eps, delta, c);
    default:
      throw config_error(
          "near_uniform_decider: unsupported access model (pair and "
          "evaluation access cannot condition on sub-intervals)");
  }
}

// ------------------------------------------- interval point-mass ratio --

// Estimate D(y)/D(x) for x, y in [a, b] using only interval-conditional
// draws: each point's conditional mass within [a, b] is factored along a
// binary descent, with per-level frequencies estimated to relative
// accuracy ~eta/sqrt(levels). A zero count at any level yields the
// extreme sentinels 0 / +infinity (or 1 when both descents die).
inline double intcond_point_ratio(OracleSession& s, std::int64_t a,
                                  std::int64_t b, std::int64_t x,
                                  std::int64_t y, double eta, double delta,
                                  const Constants& c) {
  if (x < a || x > b || y < a || y > b)
    throw config_error("intcond_point_ratio: points outside interval");
  if (x == y) return 1.0;
  const double width = static_cast<double>(b - a + 1);
  const double levels = std::max(2.0, std::ceil(std::log2(width)));
  const auto perLevel = static_cast<std::uint64_t>(std::ceil(
      c.c_bd * levels * std::log(4.0 * levels / delta) / (eta * eta)));
  auto descend = [&](std::int64_t target) -> double {
    std::int64_t lo = a, hi = b;
    double prod = 1.0;
    while (lo < hi) {
      std::int64_t mid = lo + (hi - lo) / 2;
      bool leftSide = target <= mid;
      std::uint64_t hits = 0;
      for (std::uint64_t t = 0; t < perLevel; ++t) {
        std::int64_t v = s.intcond(lo, hi);
        if ((v <= mid) == leftSide) ++hits;
      }
      if (hits == 0) return 0.0;
      prod *= static_cast<double>(hits) / static_cast<double>(perLevel);
      if (leftSide)
        hi = mid;
      else
        lo = mid + 1;
    }
    return prod;
  };
  double fx = descend(x);
  double fy = descend(y);
  if (fx == 0.0 && fy == 0.0) return 1.0;
  if (fx == 0.0) return std::numeric_limits<double>::infinity();
  if (fy == 0.0) return 0.0;
  return fy / fx;
}

// --------------------------------------------------- distance estimates --

// Pluggable implementation for conditional-interval distance-to-uniform
// estimation. The default is the exact whitebox value (zero queries); the
// hook exists so contract violations can be injected in tests.
using DistUniformHook = std::function<double(
    OracleSession&, std::int64_t, std::int64_t, double, double)>;

// Estimate tv(D_I, U_I) within +/- eps with probability >= 1-delta.
inline double estimate_dist_to_uniform(OracleSession& s, std::int64_t a,
                                       std::int64_t b, double eps,
                                       double delta,
                                       const DistUniformHook& hook = {}) {
  if (!(eps > 0) || !(delta > 0 && delta < 1) || a > b)
    throw config_error("estimate_dist_to_uniform: bad parameters");
  if (hook) return std::clamp(hook(s, a, b, eps, delta), 0.0, 1.0);
  const auto& d = s.hidden();
  double mass = d.interval_mass(a, b);
  if (mass <= 0.0)
    throw zero_mass_error("estimate_dist_to_uniform: zero-mass interval");
  double unif = 1.0 / static_cast<double>(b - a + 1);
  KahanSum dev;
  for (std::int64_t i = a; i <= b; ++i)
    dev.add(std::abs(d.value(i) / mass - unif));
  return std::clamp(0.5 * dev.value(), 0.0, 1.0);
}

// Estimate tv(D, flat(D)) under conditional access: average, over
// ceil(c_z/eps^2) sampled points, the distance-to-uniform of the sampled
// point's block (each inner estimate at accuracy eps/2, confidence
// 1 - 1/(10 m)).
inline double estimate_dist_to_flattening_cond(
    OracleSession& s, double alpha, double eps, const Constants& c,
    const DistUniformHook& hook = {}) {
  if (!(eps > 0)) throw config_error("estimate_dist_to_flattening: bad eps");
  auto part = oblivious_partition(s.n(), alpha);
  const auto m =
      static_cast<std::uint64_t>(std::ceil(c.c_z / (eps * eps)));
  const double deltaInner = 1.0 / (10.0 * static_cast<double>(m));
  KahanSum acc;
  for (std::uint64_t i = 0; i < m; ++i) {
    std::int64_t x = s.samp();
    std::size_t k = part.block_of(x);
    acc.add(estimate_dist_to_uniform(s, part.lo(k), part.hi(k), eps / 2.0,
                                     deltaInner, hook));
  }
  return std::clamp(acc.value() / static_cast<double>(m), 0.0, 1.0);
}

// Estimate tv(D, flat(D)) under sampling + cumulative evaluation: for
// each of ceil(8/eps^2) sampled points, estimate the sampled block's
// distance to uniform from ceil(2/eps^2) uniform positions, reading the
// needed point masses off cumulative evaluations. The inner average is an
// unbiased estimate of the block's distance, so no inner log factor is
// needed; total queries stay within c_cd * max(1, ln(1/eps)) / eps^4.
inline double estimate_dist_to_flattening_cumulative(
    OracleSession& s, double alpha, double eps,
    [[maybe_unused]] const Constants& c) {
  if (!(eps > 0)) throw config_error("estimate_dist_to_flattening: bad eps");
  auto part = oblivious_partition(s.n(), alpha);
  const auto m = static_cast<std::uint64_t>(std::ceil(8.0 / (eps * eps)));
  const auto t = static_cast<std::uint64_t>(std::ceil(2.0 / (eps * eps)));
  KahanSum acc;
  for (std::uint64_t i = 0; i < m; ++i) {
    std::int64_t x = s.samp();
    std::size_t k = part.block_of(x);
    const std::int64_t lo = part.lo(k), hi = part.hi(k);
    const double width = static_cast<double>(hi - lo + 1);
    double mass = s.ceval(hi) - s.ceval(lo - 1);
    if (mass <= 0.0) continue;  // unreachable: x was drawn from this block
    if (lo == hi) continue;     // singleton blocks contribute zero
    KahanSum inner;
    for (std::uint64_t j = 0; j < t; ++j) {
      std::int64_t pos = s.algo_rng().uniform_int(lo, hi);
      double pointMass = s.ceval(pos) - s.ceval(pos - 1);
      inner.add(std::max(0.0, 1.0 - width * pointMass / mass));
    }
    acc.add(inner.value() / static_cast<double>(t));
  }
  return std::clamp(acc.value() / static_cast<double>(m), 0.0, 1.0);
}

// Estimate tv(D, Dstar) for a fully known reference Dstar, by sampling
// x ~ Dstar internally and reading D(x) with one evaluation each:
// E[max(0, 1 - D(x)/Dstar(x))] = tv. Points with Dstar(x) = 0 are never
// drawn. ceil(c_id ln(1/delta)/eps^2) evaluations.
inline double estimate_tv_to_known_eval(OracleSession& s, const Pmf& dstar,
                                        double eps, double delta,
                                        const Constants& c) {
  if (!(eps > 0) || !(delta > 0 && delta < 1))
    throw config_error("estimate_tv_to_known_eval: bad parameters");
  if (dstar.n() != s.n())
    throw config_error("estimate_tv_to_known_eval: domain mismatch");
  const auto T = static_cast<std::uint64_t>(
      std::ceil(c.c_id * std::log(1.0 / delta) / (eps * eps)));
  KahanSum acc;
  for (std::uint64_t t = 0; t < T; ++t) {
    std::int64_t x =
        dstar.upper_index(s.algo_rng().uniform(), 1, dstar.n());
    double ref = dstar.value(x);
    if (ref <= 0.0) {  // fp-dust guard; zero-mass points are not drawn
      --t;
      continue;
    }
    acc.add(std::max(0.0, 1.0 - s.eval(x) / ref));
  }
  return std::clamp(acc.value() / static_cast<double>(T), 0.0, 1.0);
}

// Same estimator under cumulative-evaluation access: D(x) is read as
// ceval(x) - ceval(x-1), two queries per draw.
inline double estimate_tv_to_known_ceval(OracleSession& s, const Pmf& dstar,
                                         double eps, double delta,
                                         const Constants& c) {
  if (!(eps > 0) || !(delta > 0 && delta < 1))
    throw config_error("estimate_tv_to_known_ceval: bad parameters");
  if (dstar.n() != s.n())
    throw config_error("estimate_tv_to_known_ceval: domain mismatch");
  const auto T = static_cast<std::uint64_t>(
      std::ceil(c.c_id * std::log(1.0 / delta) / (eps * eps)));
  KahanSum acc;
  for (std::uint64_t t = 0; t < T; ++t) {
    std::int64_t x =
        dstar.upper_index(s.algo_rng().uniform(), 1, dstar.n());
    double ref = dstar.value(x);
    if (ref <= 0.0) {
      --t;
      continue;
    }
    double dx = s.ceval(x) - s.ceval(x - 1);
    acc.add(std::max(0.0, 1.0 - dx / ref));
  }
  return std::clamp(acc.value() / static_cast<double>(T), 0.0, 1.0);
}

// Stratified fixed-position variant: estimates tv(D, H) for a known
// histogram H using evaluation positions that are a deterministic
// function of the session seed (drawn before any oracle call), so the
// query transcript never depends on oracle answers.
inline double estimate_tv_to_histogram_eval_fixed(OracleSession& s,
                                                  const Histogram& h,
                                                  double eps,
                                                  const Constants& c) {
  if (!(eps > 0)) throw config_error("estimate_tv_to_histogram: bad eps");
  if (h.part.n != s.n())
    throw config_error("estimate_tv_to_histogram: domain mismatch");
  const double budget = std::ceil(c.c_fixed_eval / (eps * eps));
  const double n = static_cast<double>(h.part.n);
  std::vector<std::vector<std::int64_t>> positions(h.blocks());
  for (std::size_t k = 0; k < h.blocks(); ++k) {
    auto tk = static_cast<std::uint64_t>(std::ceil(
        budget * static_cast<double>(h.part.block_size(k)) / n));
    tk = std::max<std::uint64_t>(tk, 1);
    positions[k].reserve(tk);
    for (std::uint64_t j = 0; j < tk; ++j)
      positions[k].push_back(s.algo_rng().uniform_int(h.part.lo(k),
                                                      h.part.hi(k)));
  }
  KahanSum acc;
  for (std::size_t k = 0; k < h.blocks(); ++k) {
    double height = h.height(k);
    KahanSum inner;
    for (std::int64_t pos : positions[k])
      inner.add(std::abs(s.eval(pos) - height));
    acc.add(static_cast<double>(h.part.block_size(k)) * inner.value() /
            static_cast<double>(positions[k].size()));
  }
  return std::clamp(0.5 * acc.value(), 0.0, 1.0);
}

// ----------------------------------------------------------- learning --

// Deterministic evaluation-based reader: measure D at both endpoints of
// every block of the geometric partition (at most 2 l evaluations) and
// take the midpoint value as the block height, normalized to total mass
// one. Query positions depend only on (n, alpha), never on answers.
inline Histogram learn_histogram_eval(OracleSession& s, double alpha) {
  auto part = oblivious_partition(s.n(), alpha);
  const std::size_t l = part.blocks();
  std::vector<double> mass(l);
  double total = 0.0;
  for (std::size_t k = 0; k < l; ++k) {
    double va = s.eval(part.lo(k));
    double vb = part.hi(k) == part.lo(k) ? va : s.eval(part.hi(k));
    mass[k] = static_cast<double>(part.block_size(k)) * 0.5 * (va + vb);
    total += mass[k];
  }
  if (total <= 0.0) {
    // Degenerate reading (possible only for far-from-monotone inputs):
    // fall back to the uniform histogram.
    for (std::size_t k = 0; k < l; ++k)
      mass[k] = static_cast<double>(part.block_size(k)) /
                static_cast<double>(part.n);
    return Histogram(part, std::move(mass));
  }
  for (double& m : mass) m /= total;
  return Histogram(part, std::move(mass));
}

// Learner for monotone distributions: the midpoint histogram projected
// onto the normalized non-increasing histograms (weighted l1 projection).
// For monotone D the output is within 3*alpha of D in total variation;
// the output is always monotone and exactly normalized.
inline Histogram learn_monotone_eval(OracleSession& s, double alpha) {
  Histogram rawHist = learn_histogram_eval(s, alpha);
  const std::size_t l = rawHist.blocks();
  std::vector<double> sizes(l), heights(l);
  for (std::size_t k = 0; k < l; ++k) {
    sizes[k] = static_cast<double>(rawHist.part.block_size(k));
    heights[k] = rawHist.height(k);
  }
  std::vector<double> projected;
  detail::weighted_monotone_l1_lp(sizes, heights, &projected);
  std::vector<double> mass(l);
  KahanSum sum;
  for (std::size_t k = 0; k < l; ++k) {
    mass[k] = sizes[k] * projected[k];
    sum.add(mass[k]);
  }
  // The LP minimizer satisfies normalization up to solver tolerance;
  // rescale so downstream pmf construction sees mass exactly 1.
  if (sum.value() > 0.0)
    for (double& msk : mass) msk /= sum.value();
  return Histogram(rawHist.part, std::move(mass));
}

}  // namespace monotest
