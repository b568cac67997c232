// Copyright 2026 The Storplan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STORPLAN_SIMPLEX_HPP
#define STORPLAN_SIMPLEX_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "storplan/lp.hpp"

namespace storplan {
namespace detail {

// Bounded-variable primal simplex on a dense tableau.
//
// Columns are the structural variables followed by one logical column per
// row (slack for <=, surplus for >=, fixed at zero for =) and, when the
// starting basis is infeasible, elastic columns that phase one drives to
// zero. The logical block starts as the identity, so its columns always
// hold the current basis inverse; that is used for a cheap iterative
// refinement of the final basic solution.
class SimplexSolver {
 public:
  SimplexSolver(const LpProblem& problem, const SimplexOptions& options)
      : p_(problem), opt_(options) {}

  // Solves the continuous relaxation (integrality flags are ignored here;
  // branch and bound owns them).
  LpSolution solve() {
    init_dimensions();
    LpSolution out;
    if (nstruct_ == 0) {
      out.status = m_ == 0 ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
      if (m_ > 0) {
        // Constant rows: feasible iff every rhs accepts zero.
        bool ok = true;
        for (const auto& row : p_.constraints()) {
          double lhs = 0.0;
          for (auto [j, c] : row.terms) lhs += c * 0.0;
          if (row.sense == RowSense::kLe && lhs > row.rhs + opt_.feasibility_tol) ok = false;
          if (row.sense == RowSense::kGe && lhs < row.rhs - opt_.feasibility_tol) ok = false;
          if (row.sense == RowSense::kEq && std::abs(lhs - row.rhs) > opt_.feasibility_tol) ok = false;
        }
        out.status = ok ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
      }
      out.objective = p_.objective_offset();
      out.iterations = 0;
      return out;
    }

    bool started = false;
    if (p_.hint() && hint_applicable()) started = try_hint_start();
    if (!started) fresh_start();

    SolveStatus status = SolveStatus::kOptimal;
    if (nart_ > 0) {
      set_phase_costs(/*phase1=*/true);
      status = iterate();
      if (status == SolveStatus::kUnbounded) status = SolveStatus::kIterationLimit;
      if (status != SolveStatus::kOptimal) return extract(status);
      double infeas = 0.0;
      for (int i = 0; i < m_; ++i) {
        const int c = basis_[i];
        if (c >= art_begin_) infeas += std::abs(xb_[i]);
      }
      if (infeas > opt_.feasibility_tol * 10.0) {
        return extract(SolveStatus::kInfeasible);
      }
      // Freeze the elastic columns at zero for phase two.
      for (int j = art_begin_; j < ncols_; ++j) {
        lb_[j] = 0.0;
        ub_[j] = 0.0;
        enterable_[j] = 0;
      }
    }
    set_phase_costs(/*phase1=*/false);
    status = iterate();
    if (status == SolveStatus::kOptimal) refine();
    return extract(status);
  }

 private:
  static constexpr double kDrop = 1e-11;

  const LpProblem& p_;
  SimplexOptions opt_;

  int nstruct_ = 0, m_ = 0, ncols_ = 0, nart_ = 0, art_begin_ = 0;
  long iters_ = 0, max_iters_ = 0;

  std::vector<double> tab_;   // m_ x ncols_, row major
  std::vector<double> xb_;    // basic values per row
  std::vector<double> lb_, ub_;
  std::vector<double> cost_;  // current phase costs
  std::vector<double> d_;     // reduced costs
  std::vector<int> basis_;    // column basic in each row
  std::vector<int> basis_row_;  // row of a basic column, -1 if nonbasic
  std::vector<int> art_row_;  // creation row of each elastic column
  std::vector<std::uint8_t> at_upper_;
  std::vector<std::uint8_t> enterable_;

  double* row(int i) { return tab_.data() + std::size_t(i) * ncols_; }
  const double* row(int i) const { return tab_.data() + std::size_t(i) * ncols_; }

  void init_dimensions() {
    nstruct_ = p_.num_variables();
    m_ = p_.num_constraints();
  }

  double logical_lb(int i) const {
    switch (p_.constraints()[std::size_t(i)].sense) {
      case RowSense::kLe: return 0.0;
      case RowSense::kGe: return -kInf;
      case RowSense::kEq: return 0.0;
    }
    return 0.0;
  }
  double logical_ub(int i) const {
    switch (p_.constraints()[std::size_t(i)].sense) {
      case RowSense::kLe: return kInf;
      case RowSense::kGe: return 0.0;
      case RowSense::kEq: return 0.0;
    }
    return 0.0;
  }

  double nb_value(int j) const {
    if (at_upper_[std::size_t(j)]) return ub_[std::size_t(j)];
    if (lb_[std::size_t(j)] > -kInf) return lb_[std::size_t(j)];
    if (ub_[std::size_t(j)] < kInf) return ub_[std::size_t(j)];
    return 0.0;
  }

  bool hint_applicable() const {
    const auto& h = *p_.hint();
    return int(h.basic_var_per_row.size()) == m_ &&
           int(h.var_at_upper.size()) == nstruct_;
  }

  void alloc(int nart) {
    nart_ = nart;
    art_begin_ = nstruct_ + m_;
    ncols_ = nstruct_ + m_ + nart;
    tab_.assign(std::size_t(m_) * ncols_, 0.0);
    xb_.assign(std::size_t(m_), 0.0);
    lb_.assign(std::size_t(ncols_), 0.0);
    ub_.assign(std::size_t(ncols_), 0.0);
    basis_.assign(std::size_t(m_), -1);
    basis_row_.assign(std::size_t(ncols_), -1);
    at_upper_.assign(std::size_t(ncols_), 0);
    enterable_.assign(std::size_t(ncols_), 1);
    for (int j = 0; j < nstruct_; ++j) {
      lb_[std::size_t(j)] = p_.variable(j).lower;
      ub_[std::size_t(j)] = p_.variable(j).upper;
    }
    for (int i = 0; i < m_; ++i) {
      lb_[std::size_t(nstruct_ + i)] = logical_lb(i);
      ub_[std::size_t(nstruct_ + i)] = logical_ub(i);
    }
    // Structural coefficients and the logical identity block.
    for (int i = 0; i < m_; ++i) {
      double* r = row(i);
      for (auto [j, c] : p_.constraints()[std::size_t(i)].terms) r[j] += c;
      r[nstruct_ + i] = 1.0;
    }
    max_iters_ = opt_.max_iterations > 0
                     ? opt_.max_iterations
                     : 20000 + 12L * (long(m_) + long(ncols_));
  }

  // Basic values implied by the current nonbasic assignment, before any
  // basis transform: b - A * x_N restricted to nonbasic structurals.
  std::vector<double> raw_basic_values() const {
    std::vector<double> v(std::size_t(m_), 0.0);
    for (int i = 0; i < m_; ++i) {
      const auto& con = p_.constraints()[std::size_t(i)];
      double lhs = 0.0;
      for (auto [j, c] : con.terms) {
        if (basis_row_[std::size_t(j)] < 0) lhs += c * nb_value(j);
      }
      v[std::size_t(i)] = con.rhs - lhs;
    }
    return v;
  }

  // Start from the builder-provided basis. Returns false (leaving no
  // residue) when the advice is unusable or infeasible.
  bool try_hint_start() {
    const auto& h = *p_.hint();
    alloc(/*nart=*/0);
    for (int j = 0; j < nstruct_; ++j) {
      at_upper_[std::size_t(j)] =
          h.var_at_upper[std::size_t(j)] && ub_[std::size_t(j)] < kInf ? 1 : 0;
    }
    // Default: logicals basic.
    for (int i = 0; i < m_; ++i) {
      basis_[std::size_t(i)] = nstruct_ + i;
      basis_row_[std::size_t(nstruct_ + i)] = i;
    }
    // Claim the hinted rows.
    for (int i = 0; i < m_; ++i) {
      const int j = h.basic_var_per_row[std::size_t(i)];
      if (j < 0) continue;
      if (j >= nstruct_ || basis_row_[std::size_t(j)] >= 0) return false;
      basis_[std::size_t(i)] = j;
      basis_row_[std::size_t(j)] = i;
      basis_row_[std::size_t(nstruct_ + i)] = -1;
      // Its logical sits at its tight (zero) bound.
      at_upper_[std::size_t(nstruct_ + i)] =
          p_.constraints()[std::size_t(i)].sense == RowSense::kGe ? 1 : 0;
    }
    std::vector<double> rhs = raw_basic_values();
    // Eliminate hinted columns row by row.
    for (int i = 0; i < m_; ++i) {
      const int j = basis_[std::size_t(i)];
      if (j >= nstruct_) continue;
      double* pr = row(i);
      const double piv = pr[j];
      if (std::abs(piv) < 1e-9) return false;
      const double inv = 1.0 / piv;
      for (int k = 0; k < ncols_; ++k) pr[k] *= inv;
      pr[j] = 1.0;
      rhs[std::size_t(i)] *= inv;
      for (int r2 = 0; r2 < m_; ++r2) {
        if (r2 == i) continue;
        const double f = row(r2)[j];
        if (std::abs(f) < kDrop) {
          row(r2)[j] = 0.0;
          continue;
        }
        double* dst = row(r2);
        for (int k = 0; k < ncols_; ++k) dst[k] -= f * pr[k];
        dst[j] = 0.0;
        rhs[std::size_t(r2)] -= f * rhs[std::size_t(i)];
      }
    }
    // Feasible?
    for (int i = 0; i < m_; ++i) {
      const int bj = basis_[std::size_t(i)];
      const double v = rhs[std::size_t(i)];
      if (v < lb_[std::size_t(bj)] - opt_.feasibility_tol ||
          v > ub_[std::size_t(bj)] + opt_.feasibility_tol)
        return false;
    }
    xb_ = std::move(rhs);
    return true;
  }

  // Slack basis; rows whose logical value violates its bounds get an
  // elastic column that phase one prices down to zero.
  void fresh_start() {
    // Pre-compute starting logical values straight from the sparse rows so
    // the tableau is allocated exactly once, artificials included.
    auto start_value = [&](int j) {
      const auto& var = p_.variable(j);
      if (var.lower > -kInf) return var.lower;
      if (var.upper < kInf) return var.upper;
      return 0.0;
    };
    std::vector<double> v(std::size_t(m_), 0.0);
    std::vector<int> bad;
    for (int i = 0; i < m_; ++i) {
      const auto& con = p_.constraints()[std::size_t(i)];
      double lhs = 0.0;
      for (auto [j, c] : con.terms) lhs += c * start_value(j);
      v[std::size_t(i)] = con.rhs - lhs;
      if (v[std::size_t(i)] > logical_ub(i) + opt_.feasibility_tol ||
          v[std::size_t(i)] < logical_lb(i) - opt_.feasibility_tol)
        bad.push_back(i);
    }
    alloc(int(bad.size()));
    art_row_.assign(std::size_t(nart_), -1);
    for (int i = 0; i < m_; ++i) {
      basis_[std::size_t(i)] = nstruct_ + i;
      basis_row_[std::size_t(nstruct_ + i)] = i;
    }
    int a = art_begin_;
    for (int i : bad) {
      const int lj = nstruct_ + i;
      const double lv = v[std::size_t(i)];
      double anchored;
      if (lv > ub_[std::size_t(lj)]) {
        anchored = ub_[std::size_t(lj)];
        lb_[std::size_t(a)] = 0.0;
        ub_[std::size_t(a)] = kInf;
        at_upper_[std::size_t(lj)] = 1;
      } else {
        anchored = lb_[std::size_t(lj)];
        lb_[std::size_t(a)] = -kInf;
        ub_[std::size_t(a)] = 0.0;
        at_upper_[std::size_t(lj)] = 0;
      }
      row(i)[a] = 1.0;
      basis_[std::size_t(i)] = a;
      basis_row_[std::size_t(a)] = i;
      basis_row_[std::size_t(lj)] = -1;
      art_row_[std::size_t(a - art_begin_)] = i;
      v[std::size_t(i)] = lv - anchored;
      ++a;
    }
    xb_ = std::move(v);
  }

  void set_phase_costs(bool phase1) {
    cost_.assign(std::size_t(ncols_), 0.0);
    if (phase1) {
      for (int j = art_begin_; j < ncols_; ++j)
        cost_[std::size_t(j)] = ub_[std::size_t(j)] <= 0.0 ? -1.0 : 1.0;
    } else {
      const auto& c = p_.objective();
      for (int j = 0; j < nstruct_; ++j) cost_[std::size_t(j)] = c[std::size_t(j)];
    }
    // d = c - c_B' * B^-1 A
    d_ = cost_;
    for (int i = 0; i < m_; ++i) {
      const double cb = cost_[std::size_t(basis_[std::size_t(i)])];
      if (cb == 0.0) continue;
      const double* r = row(i);
      for (int k = 0; k < ncols_; ++k) d_[std::size_t(k)] -= cb * r[k];
    }
    for (int i = 0; i < m_; ++i) d_[std::size_t(basis_[std::size_t(i)])] = 0.0;
  }

  double cost_scale() const {
    double s = 1.0;
    for (int j = 0; j < ncols_; ++j) s = std::max(s, std::abs(cost_[std::size_t(j)]));
    return s;
  }

  int price(double tol, bool bland) const {
    int best = -1;
    double best_v = tol;
    for (int j = 0; j < ncols_; ++j) {
      if (basis_row_[std::size_t(j)] >= 0 || !enterable_[std::size_t(j)]) continue;
      if (ub_[std::size_t(j)] - lb_[std::size_t(j)] <= 0.0) continue;
      const double dj = d_[std::size_t(j)];
      double v;
      const bool free_var = lb_[std::size_t(j)] == -kInf && ub_[std::size_t(j)] == kInf;
      if (free_var) {
        v = std::abs(dj);
      } else if (at_upper_[std::size_t(j)]) {
        v = dj;
      } else {
        v = -dj;
      }
      if (v > best_v) {
        best = j;
        best_v = v;
        if (bland) break;
      }
    }
    return best;
  }

  SolveStatus iterate() {
    const double tol = opt_.optimality_tol * cost_scale();
    int stall = 0;
    bool bland = false;
    for (;;) {
      if (iters_ >= max_iters_) return SolveStatus::kIterationLimit;
      const int q = price(tol, bland);
      if (q < 0) return SolveStatus::kOptimal;
      ++iters_;
      const bool free_var = lb_[std::size_t(q)] == -kInf && ub_[std::size_t(q)] == kInf;
      const double dirsign =
          free_var ? (d_[std::size_t(q)] < 0 ? 1.0 : -1.0)
                   : (at_upper_[std::size_t(q)] ? -1.0 : 1.0);

      // Ratio test: how far can the entering variable move?
      double t_best = ub_[std::size_t(q)] - lb_[std::size_t(q)];  // own bound flip
      if (!(t_best < kInf)) t_best = kInf;
      int leave = -1;
      double leave_piv = 0.0;
      bool leave_at_upper = false;
      for (int i = 0; i < m_; ++i) {
        const double alpha = row(i)[q];
        if (std::abs(alpha) <= opt_.pivot_tol) continue;
        const double delta = -dirsign * alpha;  // d x_B[i] per unit step
        const int bj = basis_[std::size_t(i)];
        double ti;
        bool hits_upper;
        if (delta < 0) {
          if (lb_[std::size_t(bj)] == -kInf) continue;
          ti = (xb_[std::size_t(i)] - lb_[std::size_t(bj)]) / (-delta);
          hits_upper = false;
        } else {
          if (ub_[std::size_t(bj)] == kInf) continue;
          ti = (ub_[std::size_t(bj)] - xb_[std::size_t(i)]) / delta;
          hits_upper = true;
        }
        if (ti < 0) ti = 0;
        if (ti < t_best - 1e-10 ||
            (ti <= t_best + 1e-10 && leave >= 0 &&
             std::abs(alpha) > std::abs(leave_piv))) {
          t_best = ti;
          leave = i;
          leave_piv = alpha;
          leave_at_upper = hits_upper;
        }
      }

      if (t_best == kInf) return SolveStatus::kUnbounded;

      if (t_best > 1e-12) {
        stall = 0;
        bland = false;
      } else if (++stall > opt_.stall_iterations_before_bland) {
        bland = true;
      }

      if (leave < 0) {
        // Bound flip, no basis change.
        const double step = dirsign * t_best;
        for (int i = 0; i < m_; ++i) {
          const double alpha = row(i)[q];
          if (alpha != 0.0) xb_[std::size_t(i)] -= step * alpha;
        }
        at_upper_[std::size_t(q)] ^= 1;
        continue;
      }

      // Pivot q in, basis_[leave] out.
      const double enter_val = nb_value(q) + dirsign * t_best;
      if (t_best != 0.0) {
        const double step = dirsign * t_best;
        for (int i = 0; i < m_; ++i) {
          const double alpha = row(i)[q];
          if (alpha != 0.0) xb_[std::size_t(i)] -= step * alpha;
        }
      }
      const int lcol = basis_[std::size_t(leave)];
      double* pr = row(leave);
      const double inv = 1.0 / pr[q];
      for (int k = 0; k < ncols_; ++k) pr[k] *= inv;
      pr[q] = 1.0;
      const double dq = d_[std::size_t(q)];
      if (dq != 0.0) {
        for (int k = 0; k < ncols_; ++k) d_[std::size_t(k)] -= dq * pr[k];
      }
      d_[std::size_t(q)] = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (i == leave) continue;
        double* dst = row(i);
        const double f = dst[q];
        if (std::abs(f) <= kDrop) {
          dst[q] = 0.0;
          continue;
        }
        for (int k = 0; k < ncols_; ++k) dst[k] -= f * pr[k];
        dst[q] = 0.0;
      }
      xb_[std::size_t(leave)] = enter_val;
      basis_[std::size_t(leave)] = q;
      basis_row_[std::size_t(q)] = leave;
      basis_row_[std::size_t(lcol)] = -1;
      at_upper_[std::size_t(lcol)] = leave_at_upper ? 1 : 0;
      if (lcol >= art_begin_) enterable_[std::size_t(lcol)] = 0;
    }
  }

  double column_value(int k) const {
    const int r2 = basis_row_[std::size_t(k)];
    return r2 >= 0 ? xb_[std::size_t(r2)] : nb_value(k);
  }

  // One round of iterative refinement using the basis inverse held in the
  // logical block; then snap hairline bound violations.
  void refine() {
    std::vector<double> x = current_point();
    std::vector<double> r(std::size_t(m_), 0.0);
    for (int a = 0; a < nart_; ++a) {
      const int i = art_row_[std::size_t(a)];
      if (i >= 0) r[std::size_t(i)] -= column_value(art_begin_ + a);
    }
    double worst = 0.0;
    for (int i = 0; i < m_; ++i) {
      double lhs = 0.0;
      for (auto [j, c] : p_.constraints()[std::size_t(i)].terms)
        lhs += c * x[std::size_t(j)];
      lhs += column_value(nstruct_ + i);
      r[std::size_t(i)] += p_.constraints()[std::size_t(i)].rhs - lhs;
      worst = std::max(worst, std::abs(r[std::size_t(i)]));
    }
    if (worst <= opt_.feasibility_tol * 0.25) return;
    std::vector<double> corr(std::size_t(m_), 0.0);
    for (int i = 0; i < m_; ++i) {
      double ci = 0.0;
      const double* tr = row(i);
      for (int k = 0; k < m_; ++k) {
        const double binv = tr[nstruct_ + k];
        if (binv != 0.0) ci += binv * r[std::size_t(k)];
      }
      corr[std::size_t(i)] = ci;
    }
    for (int i = 0; i < m_; ++i) {
      double nv = xb_[std::size_t(i)] + corr[std::size_t(i)];
      const int bj = basis_[std::size_t(i)];
      nv = std::min(nv, ub_[std::size_t(bj)]);
      nv = std::max(nv, lb_[std::size_t(bj)]);
      xb_[std::size_t(i)] = nv;
    }
  }

  std::vector<double> current_point() const {
    std::vector<double> x(std::size_t(nstruct_), 0.0);
    for (int j = 0; j < nstruct_; ++j) {
      const int r2 = basis_row_[std::size_t(j)];
      x[std::size_t(j)] = r2 >= 0 ? xb_[std::size_t(r2)] : nb_value(j);
    }
    return x;
  }

  LpSolution extract(SolveStatus status) {
    LpSolution sol;
    sol.status = status;
    sol.iterations = iters_;
    if (status == SolveStatus::kOptimal || status == SolveStatus::kIterationLimit) {
      sol.values = current_point();
      for (int j = 0; j < nstruct_; ++j) {
        // Snap values that drifted a hair outside their box.
        sol.values[std::size_t(j)] = std::clamp(
            sol.values[std::size_t(j)], p_.variable(j).lower - 0.0,
            p_.variable(j).upper + 0.0);
      }
      sol.objective = p_.objective_value(sol.values);
    } else {
      sol.objective = 0.0;
    }
    return sol;
  }
};

}  // namespace detail

/// Solves a pure LP with the bundled bounded-variable simplex.
/// Deterministic: identical problems produce identical solutions.
inline LpSolution solve_lp(const LpProblem& problem,
                           const SimplexOptions& options = {}) {
  if (problem.has_integers())
    throw InputError("solve_lp: problem has integral variables; use solve_milp");
  detail::SimplexSolver s(problem, options);
  return s.solve();
}

namespace detail {
/// Relaxation solve that ignores integrality flags (for branch and bound).
inline LpSolution solve_relaxation(const LpProblem& problem,
                                   const SimplexOptions& options) {
  SimplexSolver s(problem, options);
  return s.solve();
}
}  // namespace detail

}  // namespace storplan

#endif  // STORPLAN_SIMPLEX_HPP
