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

#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "storplan/storage.hpp"

using namespace storplan;

TEST_CASE("piecewise tables interpolate and clamp") {
  const PiecewiseLinear f({0.0, 0.5, 1.0}, {100.0, 400.0, 200.0});
  CHECK(f(0.0) == 100.0);
  CHECK(f(0.25) == Catch::Approx(250.0));
  CHECK(f(0.75) == Catch::Approx(300.0));
  CHECK(f(-1.0) == 100.0);
  CHECK(f(2.0) == 200.0);
  CHECK(f.max_on(0.0, 1.0) == 400.0);
  CHECK(f.min_on(0.0, 1.0) == 100.0);
  CHECK_FALSE(f.is_constant());
  CHECK(PiecewiseLinear::constant(42.0).is_constant());
  CHECK(PiecewiseLinear::constant(42.0)(0.7) == 42.0);
  CHECK_THROWS_AS(PiecewiseLinear({1.0, 1.0}, {0.0, 0.0}), InputError);
  CHECK_THROWS_AS(PiecewiseLinear({0.0, 1.0}, {0.0}), InputError);
}

TEST_CASE("tes_step basics") {
  TesSpec tes;
  tes.capacity_kwh = 1000.0;
  tes.soc_min = 0.0;
  tes.soc_max = 1.0;

  SECTION("no action keeps the state") {
    CHECK(tes_step(tes, 0.37, 0.0, 0.0, 1.0) == Catch::Approx(0.37));
  }
  SECTION("hand arithmetic") {
    CHECK(tes_step(tes, 0.5, 100.0, 0.0, 1.0) == Catch::Approx(0.6).margin(1e-12));
    CHECK(tes_step(tes, 0.5, 0.0, 200.0, 0.5) == Catch::Approx(0.4).margin(1e-12));
  }
  SECTION("full store cannot charge") {
    CHECK_THROWS_AS(tes_step(tes, 1.0, 10.0, 0.0, 1.0), InfeasibleControlError);
  }
  SECTION("empty store cannot discharge") {
    try {
      tes_step(tes, 0.0, 0.0, 5.0, 1.0);
      FAIL("expected error");
    } catch (const InfeasibleControlError& e) {
      CHECK(e.limit() == "soc_min");
    }
  }
  SECTION("rate table limits are enforced and named") {
    tes.max_charge_kw = PiecewiseLinear::constant(50.0);
    try {
      tes_step(tes, 0.5, 60.0, 0.0, 1.0);
      FAIL("expected error");
    } catch (const InfeasibleControlError& e) {
      CHECK(e.limit() == "max charge rate");
    }
  }
  SECTION("standby loss decays the state") {
    tes.standby_loss_per_step = 0.01;
    CHECK(tes_step(tes, 0.5, 0.0, 0.0, 1.0) == Catch::Approx(0.495));
  }
}

TEST_CASE("feasible bounds three-way minimum") {
  TesSpec tes;
  tes.capacity_kwh = 1000.0;
  tes.soc_min = 0.0;
  tes.soc_max = 1.0;
  tes.max_charge_kw = PiecewiseLinear::constant(400.0);
  tes.max_discharge_kw = PiecewiseLinear::constant(400.0);

  SECTION("headroom binds") {
    const TesBounds b = feasible_bounds(tes, 0.9, 500.0, 1000.0, 1.0);
    CHECK(b.q_ch_max_kw == Catch::Approx(100.0));
  }
  SECTION("full store cannot charge, empty cannot discharge") {
    CHECK(feasible_bounds(tes, 1.0, 500.0, 1000.0, 1.0).q_ch_max_kw == 0.0);
    CHECK(feasible_bounds(tes, 0.0, 500.0, 1000.0, 1.0).q_dis_max_kw == 0.0);
  }
  SECTION("chiller capacity and demand bind") {
    const TesBounds b = feasible_bounds(tes, 0.5, 120.0, 80.0, 1.0);
    CHECK(b.q_ch_max_kw == Catch::Approx(120.0));
    CHECK(b.q_dis_max_kw == Catch::Approx(80.0));
  }
}

TEST_CASE("feasible bounds are always admissible for tes_step") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 400; ++trial) {
    TesSpec tes;
    tes.capacity_kwh = 100.0 + 900.0 * uni(rng);
    tes.soc_min = 0.1 * uni(rng);
    tes.soc_max = 0.9 + 0.1 * uni(rng);
    tes.standby_loss_per_step = trial % 3 == 0 ? 0.02 * uni(rng) : 0.0;
    tes.max_charge_kw = PiecewiseLinear({0.0, 1.0}, {300.0, 100.0 * uni(rng)});
    tes.max_discharge_kw = PiecewiseLinear({0.0, 1.0}, {50.0, 400.0});
    const double soc = tes.soc_min + (tes.soc_max - tes.soc_min) * uni(rng);
    const double dt = 0.25 + uni(rng);
    const TesBounds b = feasible_bounds(tes, soc, 500.0 * uni(rng), 600.0 * uni(rng), dt);
    // Both extremes must pass, including simultaneously.
    CHECK_NOTHROW(tes_step(tes, soc, b.q_ch_max_kw, 0.0, dt));
    CHECK_NOTHROW(tes_step(tes, soc, 0.0, b.q_dis_max_kw, dt));
    CHECK_NOTHROW(tes_step(tes, soc, b.q_ch_max_kw, b.q_dis_max_kw, dt));
  }
}

TEST_CASE("soc conservation over random feasible sequences") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  TesSpec tes;
  tes.capacity_kwh = 800.0;
  tes.soc_min = 0.05;
  tes.soc_max = 0.95;
  for (int trial = 0; trial < 50; ++trial) {
    double soc = 0.5;
    double net_kwh = 0.0;
    const double dt = 0.5;
    for (int step = 0; step < 200; ++step) {
      const TesBounds b = feasible_bounds(tes, soc, 300.0, 300.0, dt);
      const double q_ch = b.q_ch_max_kw * uni(rng) * (uni(rng) < 0.5 ? 1.0 : 0.0);
      const double q_dis = q_ch > 0 ? 0.0 : b.q_dis_max_kw * uni(rng);
      soc = tes_step(tes, soc, q_ch, q_dis, dt);
      net_kwh += (q_ch - q_dis) * dt;
    }
    CHECK(soc == Catch::Approx(0.5 + net_kwh / tes.capacity_kwh).margin(1e-9));
  }
}

TEST_CASE("bes_step arithmetic and efficiency") {
  BesSpec bes;
  bes.capacity_kwh = 1000.0;
  bes.power_max_kw = 500.0;
  bes.eta_charge = 0.93;
  bes.eta_discharge = 0.93;
  bes.soc_min = 0.0;
  bes.soc_max = 1.0;

  SECTION("charging with losses") {
    const BesStepResult r = bes_step(bes, 0.5, 100.0, 0.0, 1.0);
    CHECK(r.soc == Catch::Approx(0.593).margin(1e-12));
    CHECK(r.p_net_kw == Catch::Approx(100.0));
  }
  SECTION("idle") {
    const BesStepResult r = bes_step(bes, 0.5, 0.0, 0.0, 1.0);
    CHECK(r.soc == 0.5);
    CHECK(r.p_net_kw == 0.0);
  }
  SECTION("round trip returns eta_ch*eta_dis of the grid energy, exactly") {
    const double grid_in_kwh = 100.0;
    const BesStepResult after_ch = bes_step(bes, 0.5, grid_in_kwh, 0.0, 1.0);
    const double stored = (after_ch.soc - 0.5) * bes.capacity_kwh;
    // Discharge power that drains exactly what was stored.
    const double p_dis = stored * bes.eta_discharge;
    const BesStepResult after_dis = bes_step(bes, after_ch.soc, 0.0, p_dis, 1.0);
    CHECK(after_dis.soc == Catch::Approx(0.5).margin(1e-12));
    const double grid_out_kwh = p_dis * 1.0;
    CHECK(grid_out_kwh ==
          Catch::Approx(bes.eta_charge * bes.eta_discharge * grid_in_kwh)
              .epsilon(1e-12));
  }
  SECTION("power limit is enforced") {
    CHECK_THROWS_AS(bes_step(bes, 0.5, 600.0, 0.0, 1.0), InfeasibleControlError);
  }
  SECTION("soc bounds are enforced") {
    CHECK_THROWS_AS(bes_step(bes, 0.99, 100.0, 0.0, 1.0), InfeasibleControlError);
    CHECK_THROWS_AS(bes_step(bes, 0.01, 0.0, 100.0, 1.0), InfeasibleControlError);
  }
}

TEST_CASE("bes feasible bounds respect soc and power") {
  BesSpec bes;
  bes.capacity_kwh = 200.0;
  bes.power_max_kw = 100.0;
  bes.eta_charge = 0.9;
  bes.eta_discharge = 0.9;
  bes.soc_min = 0.1;
  bes.soc_max = 0.9;
  const BesBounds b = bes_feasible_bounds(bes, 0.85, 1.0);
  CHECK(b.p_ch_max_kw == Catch::Approx((0.9 - 0.85) * 200.0 / 0.9));
  CHECK(b.p_dis_max_kw == Catch::Approx(100.0));
  CHECK_NOTHROW(bes_step(bes, 0.85, b.p_ch_max_kw, 0.0, 1.0));
  CHECK_NOTHROW(bes_step(bes, 0.85, 0.0, b.p_dis_max_kw, 1.0));
}

TEST_CASE("spec validation") {
  TesSpec tes;
  tes.capacity_kwh = 100;
  tes.soc_min = 0.8;
  tes.soc_max = 0.2;
  CHECK_THROWS_AS(tes.validate(), InputError);
  BesSpec bes;
  bes.capacity_kwh = 100;
  bes.eta_charge = 0.0;
  CHECK_THROWS_AS(bes.validate(), InputError);
}
