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

#include <optional>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "storplan/branch_bound.hpp"

using namespace storplan;

namespace {

// Exhaustive oracle: try every binary assignment, solve the continuous rest.
struct MilpOracle {
  bool feasible = false;
  double objective = 0.0;
};

MilpOracle enumerate_milp(const LpProblem& p) {
  std::vector<int> binaries;
  for (int j = 0; j < p.num_variables(); ++j)
    if (p.variable(j).integer) binaries.push_back(j);
  MilpOracle best;
  LpProblem work = p;
  for (auto& v : work.mutable_variables()) v.integer = false;
  const auto original = p.variables();
  const int k = int(binaries.size());
  for (int mask = 0; mask < (1 << k); ++mask) {
    for (int b = 0; b < k; ++b) {
      const double v = (mask >> b) & 1 ? 1.0 : 0.0;
      const int j = binaries[std::size_t(b)];
      // Respect tightened binary bounds of the original problem.
      if (v < original[std::size_t(j)].lower - 1e-9 ||
          v > original[std::size_t(j)].upper + 1e-9)
        goto next_mask;
      work.mutable_variables()[std::size_t(j)].lower = v;
      work.mutable_variables()[std::size_t(j)].upper = v;
    }
    {
      const LpSolution s = solve_lp(work);
      if (s.status == SolveStatus::kOptimal &&
          (!best.feasible || s.objective < best.objective)) {
        best.feasible = true;
        best.objective = s.objective;
      }
    }
  next_mask:;
  }
  return best;
}

LpProblem random_milp(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nbin(1, 6), ncont(0, 3), nrows(1, 8);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> prob(0.0, 1.0);
  LpProblem p;
  const int nb = nbin(rng), nc = ncont(rng), m = nrows(rng);
  for (int j = 0; j < nb; ++j) {
    p.add_variable("b" + std::to_string(j), 0.0, 1.0, true);
    p.set_objective(j, 3.0 * uni(rng));
  }
  for (int j = 0; j < nc; ++j) {
    p.add_variable("x" + std::to_string(j), 0.0, 4.0 * prob(rng));
    p.set_objective(nb + j, 2.0 * uni(rng));
  }
  for (int i = 0; i < m; ++i) {
    std::vector<std::pair<int, double>> terms;
    for (int j = 0; j < nb + nc; ++j)
      if (prob(rng) < 0.7) terms.push_back({j, 3.0 * uni(rng)});
    if (terms.empty()) terms.push_back({0, 1.0});
    const RowSense sense = prob(rng) < 0.5 ? RowSense::kLe : RowSense::kGe;
    // Bias the rhs toward satisfiable rows, keeping some contradictions.
    const double rhs =
        3.0 * uni(rng) + (sense == RowSense::kLe ? 1.5 : -1.5);
    p.add_constraint("c" + std::to_string(i), std::move(terms), sense, rhs);
  }
  return p;
}

}  // namespace

TEST_CASE("all-continuous problems degenerate to the LP") {
  LpProblem p;
  p.add_variable("x", 0.0, 2.0);
  p.set_objective(0, -1.0);
  const LpSolution lp = solve_lp(p);
  const LpSolution milp = solve_milp(p);
  REQUIRE(lp.status == SolveStatus::kOptimal);
  REQUIRE(milp.status == SolveStatus::kOptimal);
  CHECK(milp.objective == lp.objective);
}

TEST_CASE("rounding trap the relaxation alone would miss") {
  LpProblem p;
  p.add_variable("x", 0.0, 1.0, true);
  p.set_objective(0, -1.0);
  p.add_constraint("cap", {{0, 1.0}}, RowSense::kLe, 0.5);
  const LpSolution s = solve_milp(p);
  REQUIRE(s.status == SolveStatus::kOptimal);
  CHECK(s.value(0) == 0.0);
  CHECK(s.objective == Catch::Approx(0.0));
}

TEST_CASE("knapsack-style instance") {
  // max 5a + 4b + 3c s.t. 2a + 3b + c <= 3, binaries: optimum a=1, c=1.
  LpProblem p;
  p.add_variable("a", 0.0, 1.0, true);
  p.add_variable("b", 0.0, 1.0, true);
  p.add_variable("c", 0.0, 1.0, true);
  p.set_objective(0, -5.0);
  p.set_objective(1, -4.0);
  p.set_objective(2, -3.0);
  p.add_constraint("w", {{0, 2.0}, {1, 3.0}, {2, 1.0}}, RowSense::kLe, 3.0);
  const LpSolution s = solve_milp(p);
  REQUIRE(s.status == SolveStatus::kOptimal);
  CHECK(s.objective == Catch::Approx(-8.0));
  CHECK(s.value(0) == 1.0);
  CHECK(s.value(1) == 0.0);
  CHECK(s.value(2) == 1.0);
}

TEST_CASE("random MILPs match exhaustive enumeration") {
  std::mt19937_64 rng(31337);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const LpProblem p = random_milp(rng);
    const LpSolution s = solve_milp(p);
    const MilpOracle o = enumerate_milp(p);
    INFO("trial " << trial);
    if (o.feasible) {
      ++feasible;
      REQUIRE(s.status == SolveStatus::kOptimal);
      CHECK(s.objective == Catch::Approx(o.objective).margin(1e-6));
      for (int j = 0; j < p.num_variables(); ++j) {
        if (p.variable(j).integer) {
          const double v = s.value(j);
          CHECK(std::abs(v - std::round(v)) < 1e-9);
        }
      }
    } else {
      ++infeasible;
      REQUIRE(s.status == SolveStatus::kInfeasible);
    }
  }
  CHECK(feasible > 60);
  CHECK(infeasible > 5);
}

TEST_CASE("milp determinism") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 20; ++trial) {
    const LpProblem p = random_milp(rng);
    const LpSolution a = solve_milp(p);
    const LpSolution b = solve_milp(p);
    REQUIRE(a.status == b.status);
    if (a.status == SolveStatus::kOptimal) {
      CHECK(a.objective == b.objective);
      CHECK(a.values == b.values);
    }
  }
}
