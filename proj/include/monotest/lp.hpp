#pragma once

// Self-contained dense two-phase tableau simplex for
//   min c'x  subject to  A x = b, x >= 0.
// Problem sizes here are a few hundred rows/columns, so a dense tableau
// with Dantzig pricing (Bland fallback for anti-cycling) is plenty.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "monotest/common.hpp"

namespace monotest {

struct LpResult {
  double objective = 0.0;
  std::vector<double> x;
};

namespace detail {

class SimplexTableau {
 public:
  // A: m x n row-major, b: m, c: n.
  SimplexTableau(std::vector<std::vector<double>> a, std::vector<double> b,
                 std::vector<double> c)
      : m_(a.size()), n_(c.size()), a_(std::move(a)), b_(std::move(b)),
        c_(std::move(c)) {
    for (const auto& row : a_)
      if (row.size() != n_) throw numeric_error("lp: ragged constraint matrix");
    if (b_.size() != m_) throw numeric_error("lp: rhs size mismatch");
    // Normalize to b >= 0 so phase-1 artificials form a feasible basis.
    for (std::size_t i = 0; i < m_; ++i)
      if (b_[i] < 0) {
        b_[i] = -b_[i];
        for (double& v : a_[i]) v = -v;
      }
  }

  LpResult solve() {
    build_phase1();
    run_simplex(/*phase1=*/true);
    if (obj_value() > kFeasTol)
      throw numeric_error("lp: infeasible (phase-1 objective " +
                          std::to_string(obj_value()) + ")");
    to_phase2();
    run_simplex(/*phase1=*/false);
    LpResult r;
    r.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) r.x[basis_[i]] = t_[i][cols_];
    r.objective = obj_value();
    return r;
  }

 private:
  static constexpr double kPivotTol = 1e-11;
  static constexpr double kFeasTol = 1e-8;
  static constexpr double kCostTol = 1e-10;

  double obj_value() const { return -t_[m_][cols_]; }

  void build_phase1() {
    cols_ = n_ + m_;  // original vars + one artificial per row
    t_.assign(m_ + 1, std::vector<double>(cols_ + 1, 0.0));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] = a_[i][j];
      t_[i][n_ + i] = 1.0;
      t_[i][cols_] = b_[i];
      basis_[i] = n_ + i;
    }
    // Phase-1 objective: sum of artificials, expressed in reduced form.
    auto& z = t_[m_];
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) z[j] -= a_[i][j];
      z[cols_] -= b_[i];
    }
    artificial_banned_ = false;
  }

  void to_phase2() {
    // Drive any basic artificial out of the basis (degenerate rows), then
    // forbid artificial columns from entering again.
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      std::size_t j = 0;
      for (; j < n_; ++j)
        if (std::abs(t_[i][j]) > kPivotTol) break;
      if (j < n_) pivot(i, j);
      // else: redundant row; its artificial stays basic at value ~0.
    }
    auto& z = t_[m_];
    std::fill(z.begin(), z.end(), 0.0);
    for (std::size_t j = 0; j < n_; ++j) z[j] = c_[j];
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) continue;
      double cb = c_[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) z[j] -= cb * t_[i][j];
    }
    artificial_banned_ = true;
  }

  void run_simplex(bool phase1) {
    const std::size_t max_iter = 400 * (m_ + n_) + 5000;
    std::size_t iter = 0;
    for (; iter < max_iter; ++iter) {
      bool bland = iter > 50 * (m_ + n_);
      std::size_t limit = artificial_banned_ ? n_ : cols_;
      std::size_t enter = cols_;
      double best = -kCostTol;
      for (std::size_t j = 0; j < limit; ++j) {
        double rc = t_[m_][j];
        if (rc < (bland ? -kCostTol : best)) {
          enter = j;
          best = rc;
          if (bland) break;
        }
      }
      if (enter == cols_) return;  // optimal
      std::size_t leave = m_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        double aij = t_[i][enter];
        if (aij > kPivotTol) {
          double ratio = t_[i][cols_] / aij;
          if (ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 &&
               (leave == m_ || basis_[i] < basis_[leave]))) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave == m_)
        throw numeric_error(phase1 ? "lp: phase-1 unbounded (bug)"
                                   : "lp: unbounded objective");
      pivot(leave, enter);
    }
    throw numeric_error("lp: iteration limit exceeded");
  }

  void pivot(std::size_t row, std::size_t col) {
    auto& pr = t_[row];
    double inv = 1.0 / pr[col];
    for (double& v : pr) v *= inv;
    pr[col] = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == row) continue;
      double f = t_[i][col];
      if (f == 0.0) continue;
      auto& ri = t_[i];
      for (std::size_t j = 0; j <= cols_; ++j) ri[j] -= f * pr[j];
      ri[col] = 0.0;
    }
    basis_[row] = col;
  }

  std::size_t m_, n_, cols_ = 0;
  std::vector<std::vector<double>> a_;
  std::vector<double> b_, c_;
  std::vector<std::vector<double>> t_;
  std::vector<std::size_t> basis_;
  bool artificial_banned_ = false;
};

}  // namespace detail

// Minimize c'x subject to A x = b, x >= 0. Throws numeric_error if the
// program is infeasible or unbounded.
inline LpResult solve_equality_lp(std::vector<std::vector<double>> a,
                                  std::vector<double> b,
                                  std::vector<double> c) {
  detail::SimplexTableau t(std::move(a), std::move(b), std::move(c));
  return t.solve();
}

}  // namespace monotest
