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

#include <catch2/catch_amalgamated.hpp>

#include "storplan/chiller_cuts.hpp"

using namespace storplan;

namespace {

ChillerSpec demo_spec() {
  ChillerSpec s;
  s.capacity_kw = 500.0;  // ignored by cut generation
  s.cop_ref = 5.5;
  s.curves = example_centrifugal_curves();
  return s;
}

double true_power(const ChillerSpec& spec, const OperatingPoint& op, double c,
                  double q) {
  ChillerSpec at = spec;
  at.capacity_kw = c;
  return chiller_power(at, op, q).p_elec_kw;
}

}  // namespace

TEST_CASE("affine part-load curve yields one exact cut") {
  ChillerSpec s = demo_spec();
  s.curves.eir_plr[0] = 0.0;
  s.curves.eir_plr[1] = 1.0;
  s.curves.eir_plr[2] = 0.0;
  const OperatingPoint op{6.67, 29.44};
  const CutSet cs = build_chiller_cuts(s, op, 6, {100.0, 800.0}, {0.0, 700.0});
  CHECK(cs.cuts.size() == 1);
  for (double c : {120.0, 400.0, 777.0}) {
    for (double frac : {0.0, 0.3, 0.9}) {
      const double q = frac * cs.psi1 * c;
      const double t = true_power(s, op, c, q);
      CHECK(cs.max_value(c, q) == Catch::Approx(t).margin(1e-9));
    }
  }
}

TEST_CASE("cuts are tight at their breakpoints") {
  const ChillerSpec s = demo_spec();
  const OperatingPoint op{6.67, 29.44};
  const int n = 8;
  const std::pair<double, double> c_range{200.0, 1000.0};
  const std::pair<double, double> q_range{0.0, 0.95 * 200.0};
  const CutSet cs = build_chiller_cuts(s, op, n, c_range, q_range);
  for (int i = 0; i < n; ++i) {
    const double c = c_range.first + (c_range.second - c_range.first) * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double q = q_range.first + (q_range.second - q_range.first) * j / (n - 1);
      const double t = true_power(s, op, c, q);
      CHECK(cs.max_value(c, q) == Catch::Approx(t).margin(1e-9));
    }
  }
}

TEST_CASE("grid soundness and accuracy") {
  const ChillerSpec s = demo_spec();
  const OperatingPoint op{6.67, 35.0};
  const std::pair<double, double> c_range{200.0, 1000.0};
  // Loads feasible at every capacity in range.
  const CurveValues v = eval_curves(s.curves, op, 0.0);
  const std::pair<double, double> q_range{0.0, v.psi1 * c_range.first * s.plr_max};

  const CutSet cs = build_chiller_cuts(s, op, 8, c_range, q_range);
  int violations = 0;
  double worst_gap = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double c = c_range.first + (c_range.second - c_range.first) * i / 49.0;
    for (int j = 0; j < 50; ++j) {
      const double q = q_range.first + (q_range.second - q_range.first) * j / 49.0;
      const double t = true_power(s, op, c, q);
      const double est = cs.max_value(c, q);
      if (est > t) ++violations;
      worst_gap = std::max(worst_gap, (t - est) / t);
    }
  }
  CHECK(violations == 0);
  CHECK(worst_gap <= 0.02);
}

TEST_CASE("gap shrinks monotonically on nested breakpoint chains") {
  const ChillerSpec s = demo_spec();
  const OperatingPoint op{6.67, 32.0};
  const double c_fix = 600.0;
  const CurveValues v = eval_curves(s.curves, op, 0.0);
  const double q_hi = v.psi1 * c_fix * s.plr_max;

  double prev_gap = 1e9;
  for (int n : {2, 3, 5, 9, 17}) {
    const CutSet cs = build_plr_cuts(s, op, n);
    double worst = 0.0;
    for (int j = 0; j < 50; ++j) {
      const double q = q_hi * j / 49.0;
      const double t = true_power(s, op, c_fix, q);
      worst = std::max(worst, (t - cs.max_value(c_fix, q)) / t);
    }
    CHECK(worst <= prev_gap + 1e-12);
    prev_gap = worst;
  }
  CHECK(prev_gap < 0.005);
}

TEST_CASE("capacity-coupled soundness across a wide plane") {
  // The planes are global lower bounds on C > 0; probe far outside the
  // generating ranges (but inside feasible PLR).
  const ChillerSpec s = demo_spec();
  const OperatingPoint op{5.0, 30.0};
  const CutSet cs = build_plr_cuts(s, op, 9);
  const CurveValues v = eval_curves(s.curves, op, 0.0);
  for (double c : {10.0, 50.0, 3000.0, 9000.0}) {
    for (double frac : {0.0, 0.25, 0.6, 1.0}) {
      const double q = frac * v.psi1 * c * s.plr_max;
      const double t = true_power(s, op, c, q);
      CHECK(cs.max_value(c, q) <= t);
    }
  }
}

TEST_CASE("off-capable cuts under-estimate a machine that can switch off") {
  const ChillerSpec s = demo_spec();
  const OperatingPoint op{6.67, 31.0};
  const CutSet cs = build_off_capable_plr_cuts(s, op, 8);
  const CurveValues v = eval_curves(s.curves, op, 0.0);
  for (double c : {150.0, 600.0, 2000.0}) {
    CHECK(cs.max_value(c, 0.0) <= 0.0);  // idle machine draws nothing
    for (double frac : {0.01, 0.2, 0.5, 0.8, 1.0}) {
      const double q = frac * v.psi1 * c * s.plr_max;
      CHECK(cs.max_value(c, q) <= chiller_power_or_off(s, op, q));
    }
    // Tight at full load.
    const double q_full = v.psi1 * c * s.plr_max;
    CHECK(cs.max_value(c, q_full) ==
          Catch::Approx(chiller_power_or_off(s, op, q_full)).margin(1e-6));
  }
}

TEST_CASE("off-capable cuts reduce to plain tangents for zero intercept") {
  ChillerSpec s = demo_spec();
  s.curves.eir_plr[0] = 0.0;
  const OperatingPoint op{6.67, 30.0};
  const CutSet a = build_off_capable_plr_cuts(s, op, 6);
  const CutSet b = build_plr_cuts(s, op, 6);
  REQUIRE(a.cuts.size() == b.cuts.size());
  for (std::size_t i = 0; i < a.cuts.size(); ++i) {
    CHECK(a.cuts[i].coef_capacity == Catch::Approx(b.cuts[i].coef_capacity));
    CHECK(a.cuts[i].coef_load == Catch::Approx(b.cuts[i].coef_load));
  }
}

TEST_CASE("machines that always duty-cycle get the single secant") {
  ChillerSpec s = demo_spec();
  // Large intercept, small curvature: the cycling ratio exceeds full load.
  s.curves.eir_plr[0] = 0.9;
  s.curves.eir_plr[1] = 0.05;
  s.curves.eir_plr[2] = 0.05;
  const OperatingPoint op{6.67, 30.0};
  const CutSet cs = build_off_capable_plr_cuts(s, op, 8);
  REQUIRE(cs.cuts.size() == 1);
  const CurveValues v = eval_curves(s.curves, op, 0.0);
  for (double c : {100.0, 500.0}) {
    for (double frac : {0.01, 0.4, 1.0}) {
      const double q = frac * v.psi1 * c * s.plr_max;
      CHECK(cs.max_value(c, q) <= chiller_power_or_off(s, op, q) + 1e-12);
    }
  }
}

TEST_CASE("non-convex part-load curves are refused") {
  ChillerSpec s = demo_spec();
  s.curves.eir_plr[2] = -0.1;
  CHECK_THROWS_AS(build_chiller_cuts(s, OperatingPoint{}, 4, {100.0, 200.0},
                                     {0.0, 100.0}),
                  NonConvexCurveError);
  CHECK_THROWS_AS(build_plr_cuts(s, OperatingPoint{}, 4), NonConvexCurveError);
}

TEST_CASE("input validation") {
  const ChillerSpec s = demo_spec();
  CHECK_THROWS_AS(build_chiller_cuts(s, OperatingPoint{}, 0, {1.0, 2.0}, {0.0, 1.0}),
                  InputError);
  CHECK_THROWS_AS(build_chiller_cuts(s, OperatingPoint{}, 4, {0.0, 2.0}, {0.0, 1.0}),
                  InputError);
  CHECK_THROWS_AS(build_chiller_cuts(s, OperatingPoint{}, 4, {1.0, 2.0}, {-1.0, 1.0}),
                  InputError);
}
