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

#ifndef STORPLAN_BRANCH_BOUND_HPP
#define STORPLAN_BRANCH_BOUND_HPP

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "storplan/lp.hpp"
#include "storplan/simplex.hpp"

namespace storplan {

struct BranchBoundOptions {
  SimplexOptions lp;
  double integrality_tol = 1e-6;
  long max_nodes = 200000;
};

/// Best-first branch and bound over the binary variables, bounding each node
/// with the bundled simplex. Globally optimal over integer assignments; an
/// all-continuous problem degenerates to a single LP solve.
inline LpSolution solve_milp(const LpProblem& problem,
                             const BranchBoundOptions& options = {}) {
  if (!problem.has_integers()) return solve_lp(problem, options.lp);

  struct Node {
    double bound;  // parent LP objective, used for best-first order
    long id;
    std::vector<std::pair<int, std::pair<double, double>>> fixings;
  };
  struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
      if (a.bound != b.bound) return a.bound > b.bound;  // min-heap
      return a.id > b.id;
    }
  };

  std::vector<int> binaries;
  for (int j = 0; j < problem.num_variables(); ++j)
    if (problem.variable(j).integer) binaries.push_back(j);

  LpProblem work = problem;  // bounds get rewritten per node
  work.clear_hint();
  const auto original_vars = problem.variables();

  auto solve_node = [&](const Node& node) {
    auto& vars = work.mutable_variables();
    for (std::size_t j = 0; j < vars.size(); ++j) {
      vars[j].lower = original_vars[j].lower;
      vars[j].upper = original_vars[j].upper;
    }
    for (const auto& [j, lu] : node.fixings) {
      vars[std::size_t(j)].lower = lu.first;
      vars[std::size_t(j)].upper = lu.second;
    }
    return detail::solve_relaxation(work, options.lp);
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  open.push(Node{-kInf, next_id++, {}});

  LpSolution incumbent;
  incumbent.status = SolveStatus::kInfeasible;
  bool have_incumbent = false;
  bool hit_limit = false;
  long nodes = 0;
  long total_iters = 0;

  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (have_incumbent &&
        node.bound >= incumbent.objective -
                          1e-9 * (1.0 + std::abs(incumbent.objective)))
      continue;
    if (++nodes > options.max_nodes) {
      hit_limit = true;
      break;
    }
    LpSolution relax = solve_node(node);
    total_iters += relax.iterations;
    if (relax.status == SolveStatus::kInfeasible) continue;
    if (relax.status == SolveStatus::kIterationLimit) {
      hit_limit = true;
      break;
    }
    if (relax.status == SolveStatus::kUnbounded) {
      // A feasible node with an unbounded relaxation: the continuous ray
      // keeps the binaries inside their boxes. Dive until the binaries are
      // fixed, at which point unboundedness is definitive.
      bool all_fixed = long(node.fixings.size()) >= long(binaries.size());
      if (all_fixed) {
        relax.iterations = total_iters;
        return relax;
      }
      int jb = -1;
      for (int j : binaries) {
        bool fixed = false;
        for (const auto& [fj, lu] : node.fixings) fixed = fixed || fj == j;
        if (!fixed) {
          jb = j;
          break;
        }
      }
      for (double v : {0.0, 1.0}) {
        Node child = node;
        child.id = next_id++;
        child.bound = -kInf;
        child.fixings.push_back({jb, {v, v}});
        open.push(std::move(child));
      }
      continue;
    }
    if (have_incumbent &&
        relax.objective >= incumbent.objective -
                               1e-9 * (1.0 + std::abs(incumbent.objective)))
      continue;

    // Most fractional binary; ties on the smallest index.
    int branch_var = -1;
    double best_frac_dist = 0.5;
    for (int j : binaries) {
      const double v = relax.values[std::size_t(j)];
      const double frac = v - std::floor(v);
      const double dist = std::min(frac, 1.0 - frac);
      if (dist > options.integrality_tol && 0.5 - dist < best_frac_dist - 1e-15) {
        best_frac_dist = 0.5 - dist;
        branch_var = j;
      }
    }
    if (branch_var < 0) {
      // Integer feasible.
      incumbent = relax;
      have_incumbent = true;
      continue;
    }
    for (double v : {0.0, 1.0}) {
      Node child = node;
      child.id = next_id++;
      child.bound = relax.objective;
      child.fixings.push_back({branch_var, {v, v}});
      open.push(std::move(child));
    }
  }

  if (hit_limit && !have_incumbent) {
    LpSolution out;
    out.status = SolveStatus::kIterationLimit;
    out.iterations = total_iters;
    return out;
  }
  if (!have_incumbent) {
    LpSolution out;
    out.status = SolveStatus::kInfeasible;
    out.iterations = total_iters;
    return out;
  }
  if (hit_limit) incumbent.status = SolveStatus::kIterationLimit;
  // Snap binaries onto exact integers.
  for (int j : binaries) {
    incumbent.values[std::size_t(j)] =
        std::round(incumbent.values[std::size_t(j)]);
  }
  incumbent.objective = problem.objective_value(incumbent.values);
  incumbent.iterations = total_iters;
  return incumbent;
}

}  // namespace storplan

#endif  // STORPLAN_BRANCH_BOUND_HPP
