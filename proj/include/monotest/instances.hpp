#pragma once
// Benchmark instance families: easy members (uniform, random monotone,
// geometric staircase), their mirrored/far counterparts, and hard pairs
// engineered so specific oracle models struggle to tell member from far.
// Every family is certifiable: instances are piecewise constant up to a
// single spike, so the exact distance to monotone is computable at scale.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "monotest/common.hpp"
#include "monotest/distance.hpp"
#include "monotest/partition.hpp"
#include "monotest/pmf.hpp"
#include "monotest/rng.hpp"

namespace monotest {

struct InstanceSpec {
  std::string family = "uniform";
  std::int64_t n = 1024;
  std::uint64_t seed = 0;
  std::map<std::string, double> params;

  double param_or(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }

  nlohmann::json to_json() const {
    nlohmann::json j{{"family", family}, {"n", n}, {"seed", seed}};
    nlohmann::json p = nlohmann::json::object();
    for (const auto& [k, v] : params) p[k] = v;
    j["params"] = std::move(p);
    return j;
  }
};

namespace detail {

inline Pmf uniform_instance(std::int64_t n) {
  return Pmf(std::vector<double>(static_cast<std::size_t>(n),
                                 1.0 / static_cast<double>(n)));
}

inline Pmf random_monotone_instance(std::int64_t n, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x5eed));
  std::vector<double> w(static_cast<std::size_t>(n));
  KahanSum total;
  for (auto& x : w) {
    x = -std::log1p(-rng.uniform());
    total.add(x);
  }
  std::sort(w.begin(), w.end(), std::greater<double>());
  for (auto& x : w) x /= total.value();
  return Pmf(std::move(w));
}

// Constant height per oblivious block, decaying by 1/(1+alpha) per block:
// monotone, and exactly its own flattening.
inline Pmf staircase_instance(std::int64_t n, double alpha) {
  auto part = oblivious_partition(n, alpha);
  std::vector<double> w(static_cast<std::size_t>(n));
  double h = 1.0;
  KahanSum total;
  for (std::size_t k = 0; k < part.blocks(); ++k) {
    for (std::int64_t i = part.lo(k); i <= part.hi(k); ++i)
      w[static_cast<std::size_t>(i - 1)] = h;
    total.add(h * static_cast<double>(part.block_size(k)));
    h /= (1.0 + alpha);
  }
  for (auto& x : w) x /= total.value();
  return Pmf(std::move(w));
}

// Hard pair for evaluation-style testers. The far variant is
//   [1, m] -> 0,  (m, 2m] -> mass 2*eps,  (2m, n] -> mass 1-2*eps,
// each band uniform; the member levels the first two bands. Both agree on
// (2m, n], so point evaluations there carry no information. For any
// non-increasing M, mass(M, [1,m]) >= mass(M, (m,2m]) while the far
// variant has 0 and 2*eps there, so its distance is at least eps; leveling
// achieves eps exactly provided m <= eps * n (then the leveled height
// eps/m still dominates the tail height).
inline Pmf eval_hard_instance(std::int64_t n, double eps, std::int64_t m,
                              bool member) {
  if (!(eps > 0.0 && eps < 0.5))
    throw config_error("eval_lb: eps must lie in (0, 1/2)");
  if (m < 1 || 2 * m >= n) throw config_error("eval_lb: need 1 <= m < n/2");
  if (static_cast<double>(m) > eps * static_cast<double>(n))
    throw config_error("eval_lb: need m <= eps * n");
  std::vector<double> w(static_cast<std::size_t>(n));
  double tail = (1.0 - 2.0 * eps) / static_cast<double>(n - 2 * m);
  for (std::int64_t i = 2 * m; i < n; ++i)
    w[static_cast<std::size_t>(i)] = tail;
  if (member) {
    double level = eps / static_cast<double>(m);
    for (std::int64_t i = 0; i < 2 * m; ++i)
      w[static_cast<std::size_t>(i)] = level;
  } else {
    double bump = 2.0 * eps / static_cast<double>(m);
    for (std::int64_t i = m; i < 2 * m; ++i)
      w[static_cast<std::size_t>(i)] = bump;
  }
  return Pmf(std::move(w));
}

// Hard pair for cumulative-evaluation testers. Level j = 1..L spans L^j
// consecutive points. The member assigns mass L^-(j+1) per point (each
// level holds 1/L of the mass). The far variant scales the member by
// beta = (2L-1)/(2L) / ... : per-point mass beta / (2 L^(j+1)), total
// beta/2, plus a hidden spike of mass (2L+1)/(4L) at a seed-chosen point
// of the widest level. Any extra domain is zero-padded at the top end.
inline Pmf spiked_decay_instance(std::int64_t n, std::int64_t levels,
                                 bool member, std::uint64_t seed) {
  if (levels < 2) throw config_error("hidden_spike: need levels >= 2");
  std::int64_t core = 0, width = 1;
  for (std::int64_t j = 1; j <= levels; ++j) {
    width *= levels;
    core += width;
    if (core > n)
      throw config_error("hidden_spike: n too small for level count");
  }
  const double L = static_cast<double>(levels);
  const double beta = (2.0 * L - 1.0) / (2.0 * L);
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  std::int64_t pos = 0;
  double perPoint = member ? 1.0 / L : beta / (2.0 * L);
  for (std::int64_t j = 1; j <= levels; ++j) {
    perPoint /= L;
    std::int64_t span = 1;
    for (std::int64_t k = 0; k < j; ++k) span *= levels;
    for (std::int64_t i = 0; i < span; ++i)
      w[static_cast<std::size_t>(pos++)] = perPoint;
  }
  if (!member) {
    // Spike somewhere in the widest (last) level.
    std::int64_t lastWidth = 1;
    for (std::int64_t k = 0; k < levels; ++k) lastWidth *= levels;
    std::int64_t lo = core - lastWidth;  // 0-based start of the last level
    Rng rng(mix_seed(seed, 0x5b1ce));
    std::int64_t k = lo + static_cast<std::int64_t>(
                              rng.uniform_below(
                                  static_cast<std::uint64_t>(lastWidth)));
    w[static_cast<std::size_t>(k)] += (2.0 * L + 1.0) / (4.0 * L);
  }
  return Pmf(std::move(w));
}

// Piecewise-constant perturbation of the staircase whose certified
// distance lands inside [0.55, 0.95] * eps: adjacent block pairs exchange
// a t-fraction of the left block's mass, and t is found by bisection on
// the exact certified distance.
inline Pmf perturbed_monotone_instance(std::int64_t n, double alpha,
                                       double eps, std::uint64_t seed) {
  if (!(eps > 0.0 && eps <= 1.0)) throw config_error("perturbed: bad eps");
  auto part = oblivious_partition(n, alpha);
  if (part.blocks() < 2)
    throw config_error("perturbed: domain too small to perturb");
  auto base = staircase_instance(n, alpha);
  Rng rng(mix_seed(seed, 0x9e27));
  // Random per-pair intensity in [1/2, 1] decorrelates instances drawn
  // with different seeds without affecting the bisection.
  std::vector<double> gain(part.blocks() / 2 + 1);
  for (auto& g : gain) g = 0.5 + 0.5 * rng.uniform();

  auto build = [&](double t) {
    std::vector<double> w = base.weights();
    for (std::size_t k = 0; k + 1 < part.blocks(); k += 2) {
      double ha = w[static_cast<std::size_t>(part.lo(k) - 1)];
      double x = t * gain[k / 2] * ha *
                 static_cast<double>(part.block_size(k));
      double da = x / static_cast<double>(part.block_size(k));
      double db = x / static_cast<double>(part.block_size(k + 1));
      for (std::int64_t i = part.lo(k); i <= part.hi(k); ++i)
        w[static_cast<std::size_t>(i - 1)] -= da;
      for (std::int64_t i = part.lo(k + 1); i <= part.hi(k + 1); ++i)
        w[static_cast<std::size_t>(i - 1)] += db;
    }
    return Pmf(std::move(w));
  };

  double lo = 0.0, hi = 1.0;
  double dHi = certify_distance_to_monotone(build(hi));
  if (dHi < 0.55 * eps)
    throw config_error("perturbed: eps out of reach for this domain");
  for (int iter = 0; iter < 80; ++iter) {
    double mid = 0.5 * (lo + hi);
    auto cand = build(mid);
    double d = certify_distance_to_monotone(cand);
    if (d < 0.55 * eps) {
      lo = mid;
    } else if (d > 0.95 * eps) {
      hi = mid;
    } else {
      return cand;
    }
  }
  throw numeric_error("perturbed: bisection failed to converge");
}

}  // namespace detail

inline Pmf generate_instance(const InstanceSpec& spec) {
  if (spec.n < 1) throw config_error("instance: n must be positive");
  const auto& f = spec.family;
  if (f == "uniform") return detail::uniform_instance(spec.n);
  if (f == "random_monotone")
    return detail::random_monotone_instance(spec.n, spec.seed);
  if (f == "staircase")
    return detail::staircase_instance(spec.n, spec.param_or("alpha", 0.5));
  if (f == "mirrored_staircase")
    return mirror(
        detail::staircase_instance(spec.n, spec.param_or("alpha", 0.5)));
  if (f == "eval_lb") {
    double eps = spec.param_or("eps", 0.25);
    auto m = static_cast<std::int64_t>(spec.param_or(
        "m", std::max(1.0, std::floor(eps * static_cast<double>(spec.n) /
                                      2.0))));
    return detail::eval_hard_instance(spec.n, eps, m,
                                      spec.param_or("member", 0.0) != 0.0);
  }
  if (f == "hidden_spike")
    return detail::spiked_decay_instance(
        spec.n, static_cast<std::int64_t>(spec.param_or("levels", 5.0)),
        spec.param_or("member", 0.0) != 0.0, spec.seed);
  if (f == "perturbed_monotone")
    return detail::perturbed_monotone_instance(
        spec.n, spec.param_or("alpha", 0.5), spec.param_or("eps", 0.25),
        spec.seed);
  throw config_error("unknown instance family: " + f);
}

struct InstanceCertificate {
  bool monotone = false;
  double distance = 0.0;   // exact distance to the monotone family
  std::size_t runs = 0;    // run-length complexity of the instance

  nlohmann::json to_json() const {
    return {{"monotone", monotone},
            {"distance", distance},
            {"runs", runs}};
  }
};

inline InstanceCertificate certify_instance(const Pmf& d) {
  InstanceCertificate cert;
  cert.monotone = is_monotone(d);
  cert.distance = cert.monotone ? 0.0 : certify_distance_to_monotone(d);
  std::size_t runs = 1;
  for (std::int64_t i = 2; i <= d.n(); ++i)
    runs += (d.value(i) != d.value(i - 1));
  cert.runs = runs;
  return cert;
}

}  // namespace monotest
