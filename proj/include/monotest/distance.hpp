#pragma once

// Exact distances to shape-constrained families, via linear programming:
//  * distance to the non-increasing (monotone) distributions, both for a
//    general pmf and — much faster — for a piecewise-constant one;
//  * the geometric-growth property of reduced (block-mass) distributions:
//    membership check, witness extraction, a mass-preserving repair
//    operation, and exact distance.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "monotest/common.hpp"
#include "monotest/lp.hpp"
#include "monotest/partition.hpp"
#include "monotest/pmf.hpp"

namespace monotest {

inline constexpr double kWitnessSlack = 1e-12;

inline bool is_monotone(const Pmf& d, double tol = 1e-12) {
  const auto& w = d.weights();
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] > w[i - 1] + tol) return false;
  return true;
}

namespace detail {

// Shared LP for min (1/2) sum_k s_k |d_k - h_k| over non-increasing
// heights h >= 0 with sum_k s_k h_k = 1. The monotone cone is
// reparametrized as h_k = sum_{j >= k} g_j with g >= 0, which removes the
// ordering rows; variables are [g | u | v] with u - v the signed residual.
inline double weighted_monotone_l1_lp(const std::vector<double>& sizes,
                                      const std::vector<double>& heights,
                                      std::vector<double>* bestHeights =
                                          nullptr) {
  const std::size_t l = sizes.size();
  if (l == 0) throw numeric_error("monotone distance: empty input");
  std::vector<double> cum(l);  // cum[j] = s_1 + ... + s_{j+1}
  double run = 0.0;
  for (std::size_t j = 0; j < l; ++j) {
    run += sizes[j];
    cum[j] = run;
  }
  const std::size_t nv = 3 * l;
  std::vector<std::vector<double>> a(l + 1, std::vector<double>(nv, 0.0));
  std::vector<double> b(l + 1, 0.0), c(nv, 0.0);
  for (std::size_t k = 0; k < l; ++k) {
    for (std::size_t j = k; j < l; ++j) a[k][j] = sizes[k];
    a[k][l + k] = 1.0;       // u_k
    a[k][2 * l + k] = -1.0;  // v_k
    b[k] = sizes[k] * heights[k];
    c[l + k] = 0.5;
    c[2 * l + k] = 0.5;
  }
  for (std::size_t j = 0; j < l; ++j) a[l][j] = cum[j];
  b[l] = 1.0;
  auto res = solve_equality_lp(std::move(a), std::move(b), std::move(c));
  if (bestHeights) {
    // Rebuild heights from the (clamped) nonnegative increments so the
    // output is exactly non-increasing and nonnegative despite fp dust.
    bestHeights->assign(l, 0.0);
    double acc = 0.0;
    for (std::size_t j = l; j-- > 0;) {
      acc += std::max(0.0, res.x[j]);
      (*bestHeights)[j] = acc;
    }
  }
  return std::max(0.0, res.objective);
}

}  // namespace detail

// Exact total-variation distance from d to the nearest non-increasing
// distribution on the same domain (linear program over all n points).
inline double distance_to_monotone_exact(const Pmf& d) {
  std::vector<double> sizes(static_cast<std::size_t>(d.n()), 1.0);
  return detail::weighted_monotone_l1_lp(sizes, d.weights());
}

// Exact distance from expand(h) to the nearest non-increasing
// distribution. Exactness for piecewise-constant inputs: averaging any
// distribution over the blocks of an interval partition preserves
// monotonicity and never increases total-variation distance, so some
// optimal monotone witness is itself flat on the same blocks; the search
// therefore reduces to block heights.
inline double distance_to_monotone_flat(const Histogram& h) {
  std::vector<double> sizes(h.blocks()), heights(h.blocks());
  for (std::size_t k = 0; k < h.blocks(); ++k) {
    sizes[k] = static_cast<double>(h.part.block_size(k));
    heights[k] = h.height(k);
  }
  return detail::weighted_monotone_l1_lp(sizes, heights);
}

// Exact distance computed after run-length compressing equal adjacent
// values; equivalent to distance_to_monotone_exact (see above) but
// feasible for large piecewise-constant instances.
inline double certify_distance_to_monotone(const Pmf& d) {
  const auto& w = d.weights();
  std::vector<std::int64_t> bounds{0};
  std::vector<double> mass;
  double runMass = w[0];
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == w[i - 1]) {
      runMass += w[i];
    } else {
      bounds.push_back(static_cast<std::int64_t>(i));
      mass.push_back(runMass);
      runMass = w[i];
    }
  }
  bounds.push_back(d.n());
  mass.push_back(runMass);
  IntervalPartition part(d.n(), std::move(bounds));
  return distance_to_monotone_flat(Histogram(std::move(part), std::move(mass)));
}

// ---------- geometric-growth property of reduced distributions ----------
//
// A reduced distribution q on {1, ..., l} satisfies the growth property
// with rate alpha when q(k+1) <= (1+alpha) q(k) for all k. Block masses of
// monotone distributions satisfy this whenever consecutive block sizes
// grow by at most (1+alpha); with floored geometric block sizes the true
// size ratios can exceed that, so callers that work with a concrete
// partition should use per-position caps (see ratio_caps below).

inline bool satisfies_expprop(const Pmf& q, double alpha,
                              double tol = kWitnessSlack) {
  const auto& w = q.weights();
  for (std::size_t k = 1; k < w.size(); ++k)
    if (w[k] > (1.0 + alpha) * w[k - 1] + tol) return false;
  return true;
}

// Per-position growth caps induced by an interval partition: the block
// masses of any monotone distribution satisfy q(k+1) <= r_k q(k) with
// r_k = s_{k+1} / s_k.
inline std::vector<double> ratio_caps(const IntervalPartition& part) {
  std::vector<double> r;
  r.reserve(part.blocks() > 0 ? part.blocks() - 1 : 0);
  for (std::size_t k = 0; k + 1 < part.blocks(); ++k)
    r.push_back(static_cast<double>(part.block_size(k + 1)) /
                static_cast<double>(part.block_size(k)));
  return r;
}

inline bool satisfies_ratio_caps(const Pmf& q, const std::vector<double>& caps,
                                 double tol = kWitnessSlack) {
  const auto& w = q.weights();
  if (caps.size() + 1 != w.size())
    throw config_error("satisfies_ratio_caps: caps length mismatch");
  for (std::size_t k = 1; k < w.size(); ++k)
    if (w[k] > caps[k - 1] * w[k - 1] + tol) return false;
  return true;
}

struct WitnessSet {
  std::vector<std::int64_t> indices;  // 1-based positions k with a violation
  double mass = 0.0;                  // total q-mass carried by the witnesses
};

// Positions k >= 2 where q(k) exceeds (1 + alpha + tau) q(k-1): the
// violations that remain visible even under a tau-sized slack.
inline WitnessSet tau_witnesses(const Pmf& q, double alpha, double tau) {
  WitnessSet out;
  const auto& w = q.weights();
  KahanSum mass;
  for (std::size_t k = 1; k < w.size(); ++k) {
    if (w[k] > (1.0 + alpha + tau) * w[k - 1] + kWitnessSlack) {
      out.indices.push_back(static_cast<std::int64_t>(k) + 1);
      mass.add(w[k]);
    }
  }
  out.mass = mass.value();
  return out;
}

// Repair a reduced distribution into one satisfying the growth property.
// Repeatedly takes the leftmost violation i and raises the prefix onto the
// geometric envelope anchored at q(i), paying for the raise out of q(i)
// itself (renormalizing only if q(i) cannot cover it). The leftmost
// violation index strictly increases, so at most l passes run.
inline Pmf fixup(const Pmf& q, double alpha) {
  std::vector<double> w = q.weights();
  const std::size_t l = w.size();
  const double growth = 1.0 + alpha;
  for (std::size_t pass = 0; pass <= l + 1; ++pass) {
    std::size_t i = l;
    for (std::size_t k = 1; k < l; ++k)
      if (w[k] > growth * w[k - 1] + 1e-15) {
        i = k;
        break;
      }
    if (i == l) return Pmf(std::move(w));
    double need = 0.0;
    double cap = w[i];
    for (std::size_t d = 1; d <= i; ++d) {
      cap /= growth;
      if (w[i - d] >= cap) break;
      need += cap - w[i - d];
      w[i - d] = cap;
    }
    double pay = std::min(need, w[i]);
    w[i] -= pay;
    if (need > pay) {
      double scale = 1.0 / (1.0 + need - pay);
      for (double& x : w) x *= scale;
    }
  }
  throw numeric_error("fixup: did not converge");
}

// Exact distance from q to the set of distributions satisfying the growth
// property with rate alpha (linear program: q'_{k+1} <= (1+alpha) q'_k).
inline double distance_to_expprop_exact(const Pmf& q, double alpha) {
  const std::size_t l = static_cast<std::size_t>(q.n());
  // Variables: [q'_1..q'_l | u | v | t] with t the growth-row slacks.
  const std::size_t nv = 3 * l + (l - 1);
  const std::size_t rows = l + (l - 1) + 1;
  std::vector<std::vector<double>> a(rows, std::vector<double>(nv, 0.0));
  std::vector<double> b(rows, 0.0), c(nv, 0.0);
  for (std::size_t k = 0; k < l; ++k) {
    a[k][k] = 1.0;
    a[k][l + k] = 1.0;
    a[k][2 * l + k] = -1.0;
    b[k] = q.weights()[k];
    c[l + k] = 0.5;
    c[2 * l + k] = 0.5;
  }
  for (std::size_t k = 0; k + 1 < l; ++k) {
    auto& row = a[l + k];
    row[k + 1] = 1.0;
    row[k] = -(1.0 + alpha);
    row[3 * l + k] = 1.0;
    b[l + k] = 0.0;
  }
  for (std::size_t k = 0; k < l; ++k) a[rows - 1][k] = 1.0;
  b[rows - 1] = 1.0;
  return std::max(0.0, solve_equality_lp(std::move(a), std::move(b),
                                         std::move(c)).objective);
}

}  // namespace monotest
