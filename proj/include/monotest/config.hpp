#pragma once

// Named tunable constants. Defaults are fixed by the calibration runs in
// the acceptance suite (smallest power-of-two-ish values that pass); every
// field can be overridden per run through the harness config / CLI --set.

#include <cmath>
#include <string>

#include <json.hpp>

#include "monotest/common.hpp"

namespace monotest {

struct Constants {
  // -- generic subroutines --------------------------------------------
  double c_cmp = 8.0;      // block-comparison draw multiplier
  double c_u = 4.0;        // near-uniform decider: pairs = ceil(c_u / eps)
  double c_cmp_decider = 2.0;  // leaner comparison multiplier inside deciders
  double decider_eta_frac = 0.25;   // per-pair ratio accuracy, * eps
  double decider_window_frac = 0.375;  // accept window half-width, * eps
  double c_dec_batch = 32.0;  // interval decider: batched draw multiplier
  double c_z = 16.0;       // conditional flattening-distance estimator
  double c_cd = 64.0;      // cumulative flattening-distance budget envelope
  double c_id = 1.0;       // known-distribution tv estimator draws
  double c_bd = 8.0;       // binary-descent point-ratio draws
  double c_fixed_eval = 1.0;  // stratified eval estimator budget, / eps^2

  // -- testers --------------------------------------------------------
  double c_s = 1.0;        // refinement cap: ell_max = c_s log^2(n)/eps
  double c_h = 1.0;        // reference samples m = c_h (ell_max/eps) log ell_max
  double c_T = 1.0;        // weight samples T = c_T log^4(n)/eps^2
  double c_col = 2.0;      // collision test slack: accept if l2 excess <= c_col eps^2
  double c_pool = 1.0;     // sampling pool = c_pool sqrt(n) log2(2n)/eps^4
  double c_e = 1.0;        // growth-property tester samples m = c_e/(eps alpha)
  double c_cmp_exp = 4.0;  // comparison multiplier in the growth-property tester
  double c_t = 2048.0;     // tolerant dual samples = c_t log2(n)/eps2^3
  double c_w = 2.0;        // cumulative witness checks = c_w/(alpha eps)

  // -- budget envelopes (Table-style shapes, leading constants) -------
  double b_samp = 4.0;         // sqrt(n) log2^2(2n) / eps^6
  double b_cond_polylog = 128.0;  // log2^2 n/eps^3 + log2^4 n/eps^2
  double b_intcond = 256.0;    // log2^5 n / eps^4
  double b_cond_polyeps = 4096.0;   // (1 + ln(1/eps)) / eps^8
  double b_eval = 32.0;        // max(log2 n/eps, 1/eps^2)
  double b_cumulative = 16384.0;  // max(1, ln(1/eps)) / eps^4
  double b_tolerant_samp = 4096.0;   // log2 n / eps2^3
  double b_tolerant_eval = 64.0;     // q^2 / eps2^2, q = (3+gamma)/gamma
  double b_tolerant_ceval = 64.0;    // q^2/eps2^2 + q log2 n / eps2

  void apply(const std::string& key, double value);
};

inline void Constants::apply(const std::string& key, double value) {
  struct Entry {
    const char* name;
    double Constants::*field;
  };
  static constexpr Entry table[] = {
      {"c_cmp", &Constants::c_cmp},
      {"c_u", &Constants::c_u},
      {"c_cmp_decider", &Constants::c_cmp_decider},
      {"decider_eta_frac", &Constants::decider_eta_frac},
      {"decider_window_frac", &Constants::decider_window_frac},
      {"c_dec_batch", &Constants::c_dec_batch},
      {"c_z", &Constants::c_z},
      {"c_cd", &Constants::c_cd},
      {"c_id", &Constants::c_id},
      {"c_bd", &Constants::c_bd},
      {"c_fixed_eval", &Constants::c_fixed_eval},
      {"c_s", &Constants::c_s},
      {"c_h", &Constants::c_h},
      {"c_T", &Constants::c_T},
      {"c_col", &Constants::c_col},
      {"c_pool", &Constants::c_pool},
      {"c_e", &Constants::c_e},
      {"c_cmp_exp", &Constants::c_cmp_exp},
      {"c_t", &Constants::c_t},
      {"c_w", &Constants::c_w},
      {"b_samp", &Constants::b_samp},
      {"b_cond_polylog", &Constants::b_cond_polylog},
      {"b_intcond", &Constants::b_intcond},
      {"b_cond_polyeps", &Constants::b_cond_polyeps},
      {"b_eval", &Constants::b_eval},
      {"b_cumulative", &Constants::b_cumulative},
      {"b_tolerant_samp", &Constants::b_tolerant_samp},
      {"b_tolerant_eval", &Constants::b_tolerant_eval},
      {"b_tolerant_ceval", &Constants::b_tolerant_ceval},
  };
  for (const auto& e : table)
    if (key == e.name) {
      if (!std::isfinite(value) || value <= 0)
        throw config_error("constant " + key + " must be positive");
      this->*(e.field) = value;
      return;
    }
  throw config_error("unknown constant: " + key);
}

inline nlohmann::json to_json(const Constants& c) {
  return nlohmann::json{
      {"c_cmp", c.c_cmp},
      {"c_u", c.c_u},
      {"c_cmp_decider", c.c_cmp_decider},
      {"decider_eta_frac", c.decider_eta_frac},
      {"decider_window_frac", c.decider_window_frac},
      {"c_dec_batch", c.c_dec_batch},
      {"c_z", c.c_z},
      {"c_cd", c.c_cd},
      {"c_id", c.c_id},
      {"c_bd", c.c_bd},
      {"c_fixed_eval", c.c_fixed_eval},
      {"c_s", c.c_s},
      {"c_h", c.c_h},
      {"c_T", c.c_T},
      {"c_col", c.c_col},
      {"c_pool", c.c_pool},
      {"c_e", c.c_e},
      {"c_cmp_exp", c.c_cmp_exp},
      {"c_t", c.c_t},
      {"c_w", c.c_w},
      {"b_samp", c.b_samp},
      {"b_cond_polylog", c.b_cond_polylog},
      {"b_intcond", c.b_intcond},
      {"b_cond_polyeps", c.b_cond_polyeps},
      {"b_eval", c.b_eval},
      {"b_cumulative", c.b_cumulative},
      {"b_tolerant_samp", c.b_tolerant_samp},
      {"b_tolerant_eval", c.b_tolerant_eval},
      {"b_tolerant_ceval", c.b_tolerant_ceval}};
}

}  // namespace monotest
