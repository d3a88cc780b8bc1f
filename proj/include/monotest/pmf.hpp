#pragma once

// Probability mass functions on {1, ..., n} with cached prefix sums.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "monotest/common.hpp"

namespace monotest {

// Normalization tolerance: inputs whose mass deviates from 1 by more than
// this are rejected; smaller deviations are renormalized exactly.
inline constexpr double kMassTolerance = 1e-9;

class Pmf {
 public:
  Pmf() = default;

  explicit Pmf(std::vector<double> weights) : w_(std::move(weights)) {
    if (w_.empty()) throw config_error("pmf: empty support");
    KahanSum total;
    for (double& x : w_) {
      if (x < 0) {
        if (x < -1e-12)
          throw config_error("pmf: negative weight " + std::to_string(x));
        x = 0.0;  // absorb fp dust from upstream arithmetic
      }
      total.add(x);
    }
    double mass = total.value();
    if (std::abs(mass - 1.0) > kMassTolerance)
      throw config_error("pmf: mass deviates from 1 by " +
                         std::to_string(mass - 1.0));
    if (mass != 1.0)
      for (double& x : w_) x /= mass;
    rebuild_prefix();
  }

  std::int64_t n() const { return static_cast<std::int64_t>(w_.size()); }

  // Point mass at i, 1-based.
  double value(std::int64_t i) const { return w_[check_index(i)]; }

  // Cumulative mass of {1, ..., i}; prefix(0) == 0, prefix(n) == 1.
  double prefix(std::int64_t i) const {
    if (i < 0 || i > n())
      throw config_error("pmf: prefix index out of range");
    return prefix_[static_cast<std::size_t>(i)];
  }

  // Mass of the interval [a, b], 1-based inclusive.
  double interval_mass(std::int64_t a, std::int64_t b) const {
    if (a < 1 || b > n() || a > b)
      throw config_error("pmf: bad interval");
    return std::max(0.0, prefix(b) - prefix(a - 1));
  }

  const std::vector<double>& weights() const { return w_; }

  // Smallest i in [a, b] with prefix(i) > target, assuming
  // prefix(a-1) <= target < prefix(b). Backbone of inverse-cdf sampling.
  std::int64_t upper_index(double target, std::int64_t a,
                           std::int64_t b) const {
    auto first = prefix_.begin() + a;
    auto last = prefix_.begin() + b + 1;
    auto it = std::upper_bound(first, last, target);
    if (it == last) --it;  // fp guard: clamp into the interval
    return static_cast<std::int64_t>(it - prefix_.begin());
  }

  bool operator==(const Pmf& o) const { return w_ == o.w_; }

 private:
  std::size_t check_index(std::int64_t i) const {
    if (i < 1 || i > n())
      throw config_error("pmf: index " + std::to_string(i) +
                         " outside [1, " + std::to_string(n()) + "]");
    return static_cast<std::size_t>(i - 1);
  }

  void rebuild_prefix() {
    prefix_.resize(w_.size() + 1);
    prefix_[0] = 0.0;
    KahanSum run;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      run.add(w_[i]);
      prefix_[i + 1] = run.value();
    }
    prefix_.back() = 1.0;  // mass is exactly 1 after normalization
  }

  std::vector<double> w_;
  std::vector<double> prefix_;
};

// Total variation distance: half the l1 distance between the mass vectors.
inline double tv_distance(const Pmf& p, const Pmf& q) {
  if (p.n() != q.n())
    throw config_error("tv_distance: mismatched supports");
  KahanSum s;
  for (std::int64_t i = 0; i < p.n(); ++i)
    s.add(std::abs(p.weights()[static_cast<std::size_t>(i)] -
                   q.weights()[static_cast<std::size_t>(i)]));
  return 0.5 * s.value();
}

// Reverse the domain: mirror(D)(i) = D(n + 1 - i). Maps non-increasing
// distributions to non-decreasing ones and vice versa.
inline Pmf mirror(const Pmf& p) {
  std::vector<double> w(p.weights().rbegin(), p.weights().rend());
  return Pmf(std::move(w));
}

inline nlohmann::json to_json(const Pmf& p) {
  return nlohmann::json{{"n", p.n()}, {"weights", p.weights()}};
}

inline Pmf pmf_from_json(const nlohmann::json& j) {
  if (!j.contains("n") || !j.contains("weights"))
    throw config_error("pmf json: missing fields");
  auto w = j.at("weights").get<std::vector<double>>();
  if (static_cast<std::int64_t>(w.size()) != j.at("n").get<std::int64_t>())
    throw config_error("pmf json: n does not match weights length");
  return Pmf(std::move(w));
}

}  // namespace monotest
