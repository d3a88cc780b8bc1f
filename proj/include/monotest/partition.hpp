#pragma once

// Interval partitions of {1, ..., n}, the oblivious geometric-growth
// decomposition, and the flatten / reduce / expand maps between a
// distribution and its piecewise-constant projection.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "monotest/common.hpp"
#include "monotest/pmf.hpp"

namespace monotest {

// A partition of {1, ..., n} into consecutive intervals, stored as the
// boundary list 0 = b_0 < b_1 < ... < b_l = n. Block k (0-based) covers
// the 1-based points [b_k + 1, b_{k+1}].
struct IntervalPartition {
  std::int64_t n = 0;
  std::vector<std::int64_t> bounds;  // length blocks() + 1

  IntervalPartition() = default;
  IntervalPartition(std::int64_t n_, std::vector<std::int64_t> bounds_)
      : n(n_), bounds(std::move(bounds_)) {
    validate();
  }

  void validate() const {
    if (n <= 0 || bounds.size() < 2 || bounds.front() != 0 ||
        bounds.back() != n)
      throw config_error("interval partition: bad boundary list");
    for (std::size_t k = 1; k < bounds.size(); ++k)
      if (bounds[k] <= bounds[k - 1])
        throw config_error("interval partition: boundaries not increasing");
  }

  std::size_t blocks() const { return bounds.size() - 1; }
  std::int64_t lo(std::size_t k) const { return bounds[k] + 1; }
  std::int64_t hi(std::size_t k) const { return bounds[k + 1]; }
  std::int64_t block_size(std::size_t k) const {
    return bounds[k + 1] - bounds[k];
  }

  // Index of the block containing point i (1-based).
  std::size_t block_of(std::int64_t i) const {
    if (i < 1 || i > n)
      throw config_error("interval partition: point outside domain");
    auto it = std::lower_bound(bounds.begin(), bounds.end(), i);
    return static_cast<std::size_t>(it - bounds.begin()) - 1;
  }

  bool operator==(const IntervalPartition& o) const = default;
};

// One-block-per-point partition (identity).
inline IntervalPartition trivial_partition(std::int64_t n) {
  std::vector<std::int64_t> b(static_cast<std::size_t>(n) + 1);
  for (std::int64_t i = 0; i <= n; ++i) b[static_cast<std::size_t>(i)] = i;
  return IntervalPartition(n, std::move(b));
}

// Oblivious decomposition: consecutive blocks of sizes floor((1+alpha)^k),
// k = 1, 2, ..., truncating the final block at n and dropping it if empty.
// Depends only on (n, alpha), never on the distribution.
inline IntervalPartition oblivious_partition(std::int64_t n, double alpha) {
  if (n <= 0) throw config_error("oblivious_partition: n must be positive");
  if (!(alpha > 0) || !std::isfinite(alpha))
    throw config_error("oblivious_partition: alpha must be positive");
  std::vector<std::int64_t> bounds{0};
  std::int64_t covered = 0;
  for (int k = 1; covered < n; ++k) {
    double raw = std::pow(1.0 + alpha, k);
    std::int64_t size =
        raw >= static_cast<double>(n) ? n : static_cast<std::int64_t>(raw);
    size = std::max<std::int64_t>(size, 1);
    covered = std::min(covered + size, n);
    bounds.push_back(covered);
  }
  return IntervalPartition(n, std::move(bounds));
}

// Upper bound on the number of oblivious blocks: 4 * ln(alpha * n + 2) / alpha.
inline double oblivious_length_bound(std::int64_t n, double alpha) {
  return 4.0 * std::log(alpha * static_cast<double>(n) + 2.0) / alpha;
}

// A piecewise-constant distribution: block masses over an interval
// partition. expand() spreads each block's mass uniformly over its points.
struct Histogram {
  IntervalPartition part;
  std::vector<double> blockMass;

  Histogram() = default;
  Histogram(IntervalPartition p, std::vector<double> mass)
      : part(std::move(p)), blockMass(std::move(mass)) {
    if (blockMass.size() != part.blocks())
      throw config_error("histogram: mass vector does not match partition");
  }

  std::size_t blocks() const { return part.blocks(); }

  // Per-point height of block k.
  double height(std::size_t k) const {
    return blockMass[k] / static_cast<double>(part.block_size(k));
  }

  Pmf expand() const {
    std::vector<double> w(static_cast<std::size_t>(part.n));
    for (std::size_t k = 0; k < blocks(); ++k) {
      double h = height(k);
      for (std::int64_t i = part.lo(k); i <= part.hi(k); ++i)
        w[static_cast<std::size_t>(i - 1)] = h;
    }
    return Pmf(std::move(w));
  }
};

// Block masses of D under the partition, computed as prefix-sum
// differences (bit-for-bit the arithmetic a cumulative-evaluation client
// would perform).
inline Histogram flatten(const Pmf& d, const IntervalPartition& part) {
  if (d.n() != part.n) throw config_error("flatten: mismatched domain");
  std::vector<double> mass(part.blocks());
  for (std::size_t k = 0; k < part.blocks(); ++k)
    mass[k] = std::max(0.0, d.prefix(part.hi(k)) - d.prefix(part.lo(k) - 1));
  return Histogram(part, std::move(mass));
}

// The reduced distribution: block masses of D as a pmf on {1, ..., l}.
inline Pmf reduce(const Pmf& d, const IntervalPartition& part) {
  return Pmf(flatten(d, part).blockMass);
}

// Piecewise-constant projection of D as a full pmf on {1, ..., n}.
inline Pmf flatten_pmf(const Pmf& d, const IntervalPartition& part) {
  return flatten(d, part).expand();
}

inline nlohmann::json to_json(const Histogram& h) {
  return nlohmann::json{{"n", h.part.n},
                        {"bounds", h.part.bounds},
                        {"blockWeights", h.blockMass}};
}

inline Histogram histogram_from_json(const nlohmann::json& j) {
  if (!j.contains("n") || !j.contains("bounds") || !j.contains("blockWeights"))
    throw config_error("histogram json: missing fields");
  IntervalPartition part(j.at("n").get<std::int64_t>(),
                         j.at("bounds").get<std::vector<std::int64_t>>());
  return Histogram(std::move(part),
                   j.at("blockWeights").get<std::vector<double>>());
}

}  // namespace monotest
