#pragma once

// Oracle access to a hidden distribution under an explicit access model.
// Every oracle call increments exactly one per-kind counter; calls outside
// the session's model throw policy_error. Responses are a deterministic
// function of (hidden distribution, seed, query sequence).

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "monotest/common.hpp"
#include "monotest/pmf.hpp"
#include "monotest/rng.hpp"

namespace monotest {

// A finite union of disjoint 1-based inclusive intervals, kept sorted.
// Covers every conditioning set the algorithms use: single intervals,
// two-point sets, unions of two blocks, the whole domain.
class QuerySet {
 public:
  static QuerySet interval(std::int64_t a, std::int64_t b) {
    if (a > b || a < 1) throw config_error("query set: bad interval");
    QuerySet s;
    s.iv_.emplace_back(a, b);
    return s;
  }
  static QuerySet whole(std::int64_t n) { return interval(1, n); }
  static QuerySet pair(std::int64_t x, std::int64_t y) {
    if (x > y) std::swap(x, y);
    QuerySet s;
    if (x == y) {
      s.iv_.emplace_back(x, x);
    } else if (y == x + 1) {
      s.iv_.emplace_back(x, y);
    } else {
      s.iv_.emplace_back(x, x);
      s.iv_.emplace_back(y, y);
    }
    return s;
  }
  static QuerySet union_of(const QuerySet& a, const QuerySet& b) {
    std::vector<std::pair<std::int64_t, std::int64_t>> iv = a.iv_;
    iv.insert(iv.end(), b.iv_.begin(), b.iv_.end());
    std::sort(iv.begin(), iv.end());
    QuerySet s;
    for (auto [lo, hi] : iv) {
      if (!s.iv_.empty() && lo <= s.iv_.back().second + 1)
        s.iv_.back().second = std::max(s.iv_.back().second, hi);
      else
        s.iv_.emplace_back(lo, hi);
    }
    return s;
  }

  const std::vector<std::pair<std::int64_t, std::int64_t>>& intervals() const {
    return iv_;
  }

  bool contains(std::int64_t i) const {
    for (auto [lo, hi] : iv_)
      if (i >= lo && i <= hi) return true;
    return false;
  }

  double mass(const Pmf& d) const {
    KahanSum s;
    for (auto [lo, hi] : iv_) s.add(d.interval_mass(lo, hi));
    return s.value();
  }

  std::vector<std::int64_t> flat_args() const {
    std::vector<std::int64_t> out;
    for (auto [lo, hi] : iv_) {
      out.push_back(lo);
      out.push_back(hi);
    }
    return out;
  }

 private:
  std::vector<std::pair<std::int64_t, std::int64_t>> iv_;
};

struct QueryRecord {
  QueryKind kind;
  std::vector<std::int64_t> args;
  bool operator==(const QueryRecord& o) const = default;
};

class OracleSession {
 public:
  OracleSession(Pmf hidden, Model model, std::uint64_t seed)
      : d_(std::move(hidden)),
        model_(model),
        oracleRng_(mix_seed(seed, 0x0ac1e)),
        algoRng_(mix_seed(seed, 0xa160)) {}

  std::int64_t n() const { return d_.n(); }
  Model model() const { return model_; }
  const QueryLog& log() const { return log_; }

  // Algorithm-internal randomness (never counted as oracle queries).
  Rng& algo_rng() { return algoRng_; }

  // Instrumentation access to the hidden distribution, for whitebox
  // estimator implementations and test assertions. Testers never touch it.
  const Pmf& hidden() const { return d_; }

  void set_recording(bool on) { recording_ = on; }
  const std::vector<QueryRecord>& transcript() const { return transcript_; }

  // One unconditioned draw.
  std::int64_t samp() {
    guard(QueryKind::Samp);
    log_.samp++;
    record(QueryKind::Samp, {});
    return draw_from(QuerySet::whole(n()), 1.0);
  }

  // One draw conditioned on an arbitrary interval-union set.
  std::int64_t cond(const QuerySet& s) {
    guard(QueryKind::Cond);
    log_.cond++;
    record(QueryKind::Cond, s.flat_args());
    return cond_draw(s);
  }

  // One draw conditioned on the interval [a, b].
  std::int64_t intcond(std::int64_t a, std::int64_t b) {
    guard(QueryKind::IntCond);
    log_.intcond++;
    record(QueryKind::IntCond, {a, b});
    return cond_draw(QuerySet::interval(a, b));
  }

  // One draw conditioned on the two-point set {x, y}.
  std::int64_t paircond(std::int64_t x, std::int64_t y) {
    guard(QueryKind::PairCond);
    log_.paircond++;
    record(QueryKind::PairCond, {x, y});
    if (x == y) {
      if (d_.value(x) <= 0.0)
        throw zero_mass_error("paircond: conditioning set has zero mass");
      return x;
    }
    double px = d_.value(x), py = d_.value(y);
    double m = px + py;
    if (m <= 0.0)
      throw zero_mass_error("paircond: conditioning set has zero mass");
    return oracleRng_.uniform() * m < px ? x : y;
  }

  // Point mass D(x).
  double eval(std::int64_t x) {
    guard(QueryKind::Eval);
    log_.eval++;
    record(QueryKind::Eval, {x});
    return d_.value(x);
  }

  // Cumulative mass D({1..j}); j = 0 is allowed and returns 0.
  double ceval(std::int64_t j) {
    guard(QueryKind::Ceval);
    log_.ceval++;
    record(QueryKind::Ceval, {j});
    return d_.prefix(j);
  }

 private:
  void guard(QueryKind k) const {
    if (!model_allows(model_, k))
      throw policy_error(std::string("query kind '") + query_kind_name(k) +
                         "' not granted under model '" + model_name(model_) +
                         "'");
  }

  void record(QueryKind k, std::vector<std::int64_t> args) {
    if (recording_) transcript_.push_back({k, std::move(args)});
  }

  std::int64_t cond_draw(const QuerySet& s) {
    double m = s.mass(d_);
    if (m <= 0.0)
      throw zero_mass_error("cond: conditioning set has zero mass");
    // Fast path for two-point sets.
    const auto& iv = s.intervals();
    if (iv.size() == 2 && iv[0].first == iv[0].second &&
        iv[1].first == iv[1].second) {
      double px = d_.value(iv[0].first);
      return oracleRng_.uniform() * m < px ? iv[0].first : iv[1].first;
    }
    return draw_from(s, m);
  }

  std::int64_t draw_from(const QuerySet& s, double mass) {
    double target = oracleRng_.uniform() * mass;
    const auto& iv = s.intervals();
    for (std::size_t idx = 0; idx < iv.size(); ++idx) {
      auto [a, b] = iv[idx];
      double part = d_.interval_mass(a, b);
      if (target < part || idx + 1 == iv.size()) {
        std::int64_t i =
            d_.upper_index(d_.prefix(a - 1) + std::min(target, part), a, b);
        // fp-dust guard: never return a zero-mass point from a set whose
        // total mass is positive.
        while (i > a && d_.value(i) <= 0.0) --i;
        return i;
      }
      target -= part;
    }
    return iv.back().second;
  }

  Pmf d_;
  Model model_;
  Rng oracleRng_;
  Rng algoRng_;
  QueryLog log_;
  bool recording_ = false;
  std::vector<QueryRecord> transcript_;
};

}  // namespace monotest
