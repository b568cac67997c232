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

#ifndef STORPLAN_LP_HPP
#define STORPLAN_LP_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "storplan/errors.hpp"

namespace storplan {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense : char { kLe = 'L', kEq = 'E', kGe = 'G' };

enum class SolveStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
};

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

struct LpVariable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  bool integer = false;  // binaries only; bounds must lie within [0, 1]
};

struct LpConstraint {
  std::string name;
  std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
  RowSense sense = RowSense::kLe;
  double rhs = 0.0;
};

/// Optional starting-basis advice a problem builder can attach. Row i is
/// pivoted on variable basic_var_per_row[i] (-1 keeps the row's logical
/// basic); every other variable starts at the bound var_at_upper selects.
/// The solver verifies feasibility and silently falls back to the ordinary
/// two-phase start when the advice does not hold.
struct SimplexHint {
  std::vector<int> basic_var_per_row;
  std::vector<std::uint8_t> var_at_upper;
};

/// A linear (or mixed-binary) minimization problem in the natural row form:
/// min c'x + offset  s.t.  rows (<=, =, >=),  bounds l <= x <= u.
class LpProblem {
 public:
  int add_variable(std::string name, double lower, double upper,
                   bool integer = false) {
    if (!(lower <= upper)) {
      throw InputError("variable '" + name + "': lower bound " +
                       std::to_string(lower) + " exceeds upper " +
                       std::to_string(upper));
    }
    if (integer && (lower < -1e-9 || upper > 1.0 + 1e-9)) {
      throw InputError("variable '" + name +
                       "': integral variables must be binary");
    }
    vars_.push_back(LpVariable{std::move(name), lower, upper, integer});
    obj_.push_back(0.0);
    return int(vars_.size()) - 1;
  }

  void set_objective(int var, double coeff) { obj_.at(std::size_t(var)) = coeff; }
  void add_objective(int var, double coeff) { obj_.at(std::size_t(var)) += coeff; }
  void set_objective_offset(double v) { obj_offset_ = v; }
  void add_objective_offset(double v) { obj_offset_ += v; }

  int add_constraint(std::string name,
                     std::vector<std::pair<int, double>> terms, RowSense sense,
                     double rhs) {
    for (auto& [idx, coeff] : terms) {
      if (idx < 0 || idx >= int(vars_.size()))
        throw InputError("constraint '" + name +
                         "' references undeclared variable");
      if (!std::isfinite(coeff))
        throw InputError("constraint '" + name + "' has a non-finite coefficient");
    }
    if (!std::isfinite(rhs))
      throw InputError("constraint '" + name + "' has a non-finite rhs");
    rows_.push_back(LpConstraint{std::move(name), std::move(terms), sense, rhs});
    return int(rows_.size()) - 1;
  }

  int num_variables() const { return int(vars_.size()); }
  int num_constraints() const { return int(rows_.size()); }
  const std::vector<LpVariable>& variables() const { return vars_; }
  const std::vector<LpConstraint>& constraints() const { return rows_; }
  const std::vector<double>& objective() const { return obj_; }
  double objective_offset() const { return obj_offset_; }
  const LpVariable& variable(int i) const { return vars_.at(std::size_t(i)); }

  std::vector<LpVariable>& mutable_variables() { return vars_; }

  bool has_integers() const {
    for (const auto& v : vars_)
      if (v.integer) return true;
    return false;
  }

  void set_hint(SimplexHint hint) { hint_ = std::move(hint); }
  void clear_hint() { hint_.reset(); }
  const std::optional<SimplexHint>& hint() const { return hint_; }

  /// Objective value of a point, including the constant offset.
  double objective_value(const std::vector<double>& x) const {
    double v = obj_offset_;
    for (std::size_t j = 0; j < obj_.size(); ++j) v += obj_[j] * x[j];
    return v;
  }

  /// Largest violation of rows and bounds at a point.
  double max_violation(const std::vector<double>& x) const {
    double worst = 0.0;
    for (std::size_t j = 0; j < vars_.size(); ++j) {
      worst = std::max(worst, vars_[j].lower - x[j]);
      worst = std::max(worst, x[j] - vars_[j].upper);
    }
    for (const auto& row : rows_) {
      double a = 0.0;
      for (auto [idx, coeff] : row.terms) a += coeff * x[std::size_t(idx)];
      switch (row.sense) {
        case RowSense::kLe: worst = std::max(worst, a - row.rhs); break;
        case RowSense::kGe: worst = std::max(worst, row.rhs - a); break;
        case RowSense::kEq: worst = std::max(worst, std::abs(a - row.rhs)); break;
      }
    }
    return worst;
  }

  /// Debug dump in the common text LP interchange format, for cross-checks
  /// against external solvers.
  void write_lp_format(std::ostream& os) const {
    auto var_name = [&](int j) {
      const auto& n = vars_[std::size_t(j)].name;
      return n.empty() ? ("x" + std::to_string(j)) : n;
    };
    os << "Minimize\n obj:";
    bool any = false;
    for (std::size_t j = 0; j < obj_.size(); ++j) {
      if (obj_[j] == 0.0) continue;
      os << (obj_[j] >= 0 ? " + " : " - ") << std::abs(obj_[j]) << " "
         << var_name(int(j));
      any = true;
    }
    if (!any) os << " 0";
    os << "\nSubject To\n";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const auto& row = rows_[i];
      os << " " << (row.name.empty() ? "c" + std::to_string(i) : row.name)
         << ":";
      for (auto [idx, coeff] : row.terms) {
        os << (coeff >= 0 ? " + " : " - ") << std::abs(coeff) << " "
           << var_name(idx);
      }
      switch (row.sense) {
        case RowSense::kLe: os << " <= "; break;
        case RowSense::kGe: os << " >= "; break;
        case RowSense::kEq: os << " = "; break;
      }
      os << row.rhs << "\n";
    }
    os << "Bounds\n";
    for (std::size_t j = 0; j < vars_.size(); ++j) {
      const auto& v = vars_[j];
      if (v.lower == -kInf && v.upper == kInf) {
        os << " " << var_name(int(j)) << " free\n";
      } else {
        if (v.lower == -kInf)
          os << " -inf <= " << var_name(int(j)) << " <= " << v.upper << "\n";
        else if (v.upper == kInf)
          os << " " << v.lower << " <= " << var_name(int(j)) << "\n";
        else
          os << " " << v.lower << " <= " << var_name(int(j)) << " <= "
             << v.upper << "\n";
      }
    }
    bool any_bin = false;
    for (std::size_t j = 0; j < vars_.size(); ++j) {
      if (!vars_[j].integer) continue;
      if (!any_bin) {
        os << "Binaries\n";
        any_bin = true;
      }
      os << " " << var_name(int(j)) << "\n";
    }
    os << "End\n";
  }

 private:
  std::vector<LpVariable> vars_;
  std::vector<LpConstraint> rows_;
  std::vector<double> obj_;
  double obj_offset_ = 0.0;
  std::optional<SimplexHint> hint_;
};

struct LpSolution {
  SolveStatus status = SolveStatus::kIterationLimit;
  std::vector<double> values;
  double objective = 0.0;
  long iterations = 0;

  bool optimal() const { return status == SolveStatus::kOptimal; }
  double value(int var) const { return values.at(std::size_t(var)); }
};

struct SimplexOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-7;  // relative to the objective scale
  double pivot_tol = 1e-9;
  long max_iterations = 0;  // 0 = choose from problem size
  int stall_iterations_before_bland = 500;
};

}  // namespace storplan

#endif  // STORPLAN_LP_HPP
