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

#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "storplan/mpc.hpp"
#include "storplan/sizing.hpp"

using namespace storplan;

namespace {

AssetFleet fleet_template() {
  AssetFleet f;
  f.base_chiller.cop_ref = 5.5;
  f.base_chiller.curves = example_centrifugal_curves();
  f.base_chiller.curves.eir_plr[0] = 0.0;
  f.base_chiller.curves.eir_plr[1] = 0.536297;
  f.base_chiller.curves.eir_plr[2] = 0.46371;
  f.tes_chiller = f.base_chiller;
  f.tes.soc_min = 0.05;
  f.tes.soc_max = 0.95;
  f.bes.eta_charge = 0.93;
  f.bes.eta_discharge = 0.93;
  f.bes.soc_min = 0.05;
  f.bes.soc_max = 0.95;
  return f;
}

Tariff tou_tariff(double off, double on, double demand) {
  Tariff t;
  t.default_price_per_kwh = off;
  TariffPeriod p;
  p.name = "on";
  p.start_hour = 12.0;
  p.end_hour = 18.0;
  p.price_per_kwh = on;
  t.periods.push_back(p);
  t.default_demand_rate_per_kw = demand;
  return t;
}

HorizonInputs demo_week_inputs(std::uint64_t seed, const Tariff& t,
                               double peak_cool = 900.0,
                               double peak_elec = 600.0) {
  SynthTemplate st;
  st.peak_cooling_kw = peak_cool;
  st.peak_electric_kw = peak_elec;
  st.climate = ClimateShape::kMild;
  const ProfileSet year = synth_profiles(seed, st);
  const ProfileSet week = representative_week(year);
  return make_year_inputs(week, t, PlantConfig{}, 0.5, 0.5);
}

// The sequential procedure: thermal storage first with the battery frozen
// out, then the battery with the thermal side pinned.
SizingResult sequential_sizing(const SizingConfig& cfg, const AssetFleet& tpl,
                               const HorizonInputs& year) {
  SizingConfig stage1 = cfg;
  stage1.fixed_bes_power_kw = 0.0;
  stage1.fixed_bes_kwh = 0.0;
  const SizingResult r1 = solve_sizing(stage1, tpl, year);
  REQUIRE(r1.status == SolveStatus::kOptimal);
  SizingConfig stage2 = cfg;
  stage2.fixed_tes_chiller_kw = r1.c_tes_chiller_kw;
  stage2.fixed_tes_kwh = r1.q_tes_kwh;
  const SizingResult r2 = solve_sizing(stage2, tpl, year);
  REQUIRE(r2.status == SolveStatus::kOptimal);
  return r2;
}

}  // namespace

TEST_CASE("present worth factor") {
  CHECK(present_worth_factor(7, 0.0) == Catch::Approx(7.0));
  // Independent oracle: direct summation.
  double acc = 0.0;
  for (int y = 1; y <= 20; ++y) acc += 1.0 / std::pow(1.05, y);
  CHECK(present_worth_factor(20, 0.05) == Catch::Approx(acc).margin(1e-12));
  CHECK(present_worth_factor(20, 0.05) == Catch::Approx(12.4622).margin(1e-4));
  CHECK(present_worth_factor(1, 0.05) == Catch::Approx(0.952381).margin(1e-6));
  CHECK_THROWS_AS(present_worth_factor(-1, 0.05), InputError);
  CHECK_THROWS_AS(present_worth_factor(10, -0.1), InputError);
}

TEST_CASE("zero-demand year sizes everything to zero") {
  ProfileSet p;
  p.start = parse_iso_timestamp("2021-01-01T00:00");
  p.dt_h = 1.0;
  p.cooling_kw.assign(48, 0.0);
  p.electric_kw.assign(48, 0.0);
  p.oat_c.assign(48, 20.0);
  const HorizonInputs in =
      make_year_inputs(p, Tariff::flat(0.1, 19.0), PlantConfig{}, 0.5, 0.5);
  const SizingResult r = solve_sizing(SizingConfig{}, fleet_template(), in);
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(r.c_chiller_kw == Catch::Approx(0.0).margin(1e-6));
  CHECK(r.c_tes_chiller_kw == Catch::Approx(0.0).margin(1e-6));
  CHECK(r.q_tes_kwh == Catch::Approx(0.0).margin(1e-6));
  CHECK(r.p_bes_kw == Catch::Approx(0.0).margin(1e-6));
  CHECK(r.c_bes_kwh == Catch::Approx(0.0).margin(1e-6));
  CHECK(r.total_present_value == Catch::Approx(0.0).margin(1e-6));
}

TEST_CASE("capital accounting identities") {
  const Tariff t = tou_tariff(0.10, 0.30, 11.0);
  const HorizonInputs in = demo_week_inputs(21, t);
  SizingConfig cfg;
  cfg.cut_count = 4;
  const SizingResult r = solve_sizing(cfg, fleet_template(), in);
  REQUIRE(r.status == SolveStatus::kOptimal);
  const double capital = cfg.alpha_chiller_per_kw * r.c_chiller_kw +
                         cfg.alpha_tes_chiller_per_kw * r.c_tes_chiller_kw +
                         cfg.alpha_tes_per_kwh * r.q_tes_kwh +
                         cfg.alpha_bes_power_per_kw * r.p_bes_kw +
                         cfg.alpha_bes_per_kwh * r.c_bes_kwh;
  CHECK(r.capital == Catch::Approx(capital).margin(1e-9));
  CHECK(r.total_present_value ==
        Catch::Approx(r.capital + r.pwf * r.annual_operating).margin(1e-6));
  CHECK(r.pwf == Catch::Approx(present_worth_factor(20, 0.05)));
}

TEST_CASE("prohibitive battery prices push the battery out") {
  const Tariff t = tou_tariff(0.10, 0.30, 11.0);
  const HorizonInputs in = demo_week_inputs(22, t);
  SizingConfig cfg;
  cfg.cut_count = 4;
  cfg.alpha_bes_per_kwh = 1e9;
  const SizingResult r = solve_sizing(cfg, fleet_template(), in);
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(r.c_bes_kwh == Catch::Approx(0.0).margin(1e-6));
  CHECK(r.c_chiller_kw > 0.0);
}

TEST_CASE("hand-solvable two-step peak-shaving threshold") {
  // One 100 kW spike, flat price, no cooling. Shaving s kW needs s kW of
  // battery power; a shaved kW is worth demand_weight * pwf * rate. The
  // battery invests on one side of that threshold and stays out on the
  // other.
  ProfileSet p;
  p.start = parse_iso_timestamp("2021-06-01T00:00");
  p.dt_h = 1.0;
  p.cooling_kw = {0.0, 0.0};
  p.electric_kw = {0.0, 100.0};
  p.oat_c = {20.0, 20.0};
  AssetFleet tpl = fleet_template();
  tpl.bes.eta_charge = 1.0;
  tpl.bes.eta_discharge = 1.0;
  tpl.bes.soc_min = 0.0;
  tpl.bes.soc_max = 1.0;
  const Tariff t = Tariff::flat(0.05, 19.0);
  const HorizonInputs in = make_year_inputs(p, t, PlantConfig{}, 0.5, 0.5);
  SizingConfig cfg;
  cfg.demand_weight = 12.0;
  cfg.energy_weight = 1.0;
  cfg.alpha_bes_per_kwh = 1.0;
  const double threshold = 12.0 * present_worth_factor(20, 0.05) * 19.0;

  SECTION("power price below the threshold: invest") {
    cfg.alpha_bes_power_per_kw = threshold - 200.0;
    const SizingResult r = solve_sizing(cfg, tpl, in);
    REQUIRE(r.status == SolveStatus::kOptimal);
    CHECK(r.p_bes_kw > 10.0);
  }
  SECTION("power price above the threshold: stay out") {
    cfg.alpha_bes_power_per_kw = threshold + 200.0;
    const SizingResult r = solve_sizing(cfg, tpl, in);
    REQUIRE(r.status == SolveStatus::kOptimal);
    CHECK(r.p_bes_kw == Catch::Approx(0.0).margin(1e-6));
  }
}

TEST_CASE("raising every unit price never improves the objective") {
  const Tariff t = tou_tariff(0.10, 0.25, 8.0);
  const HorizonInputs in = demo_week_inputs(23, t);
  SizingConfig cfg;
  cfg.cut_count = 4;
  const SizingResult base = solve_sizing(cfg, fleet_template(), in);
  SizingConfig up = cfg;
  up.alpha_chiller_per_kw *= 1.1;
  up.alpha_tes_chiller_per_kw *= 1.1;
  up.alpha_tes_per_kwh *= 1.1;
  up.alpha_bes_power_per_kw *= 1.1;
  up.alpha_bes_per_kwh *= 1.1;
  const SizingResult dearer = solve_sizing(up, fleet_template(), in);
  REQUIRE(base.status == SolveStatus::kOptimal);
  REQUIRE(dearer.status == SolveStatus::kOptimal);
  CHECK(dearer.total_present_value >= base.total_present_value - 1e-6);
}

TEST_CASE("optimal capacities scale with the load profile") {
  const Tariff t = tou_tariff(0.10, 0.30, 11.0);
  SynthTemplate st;
  st.peak_cooling_kw = 600.0;
  st.peak_electric_kw = 400.0;
  st.days = 7;
  const ProfileSet week = synth_profiles(31, st);
  SizingConfig cfg;
  cfg.cut_count = 4;
  // Caps far out of reach so the problem is positively homogeneous.
  cfg.max_chiller_kw = cfg.max_tes_chiller_kw = 1e7;
  cfg.max_tes_kwh = cfg.max_bes_kwh = cfg.max_bes_power_kw = 1e7;

  const HorizonInputs in1 = make_year_inputs(week, t, PlantConfig{}, 0.5, 0.5);
  const SizingResult r1 = solve_sizing(cfg, fleet_template(), in1);
  ProfileSet scaled = week;
  const double alpha = 1.7;
  for (auto& v : scaled.cooling_kw) v *= alpha;
  for (auto& v : scaled.electric_kw) v *= alpha;
  const HorizonInputs in2 =
      make_year_inputs(scaled, t, PlantConfig{}, 0.5, 0.5);
  const SizingResult r2 = solve_sizing(cfg, fleet_template(), in2);
  REQUIRE(r1.status == SolveStatus::kOptimal);
  REQUIRE(r2.status == SolveStatus::kOptimal);
  CHECK(r2.total_present_value ==
        Catch::Approx(alpha * r1.total_present_value).epsilon(1e-5));
  CHECK(r2.c_chiller_kw == Catch::Approx(alpha * r1.c_chiller_kw).margin(1e-3));
  CHECK(r2.q_tes_kwh == Catch::Approx(alpha * r1.q_tes_kwh).margin(1e-2));
  CHECK(r2.c_bes_kwh == Catch::Approx(alpha * r1.c_bes_kwh).margin(1e-2));
}

TEST_CASE("floor space caps the storage mix") {
  const Tariff t = tou_tariff(0.10, 0.35, 15.0);
  const HorizonInputs in = demo_week_inputs(24, t);
  SizingConfig roomy;
  roomy.cut_count = 4;
  const SizingResult free_opt = solve_sizing(roomy, fleet_template(), in);
  REQUIRE(free_opt.status == SolveStatus::kOptimal);
  const double used_m2 = free_opt.q_tes_kwh / 60.0 + free_opt.c_bes_kwh / 200.0;
  REQUIRE(used_m2 > 1.0);

  SizingConfig tight = roomy;
  tight.space = SpaceConstraint{used_m2 / 2.0, 60.0, 200.0};
  const SizingResult r = solve_sizing(tight, fleet_template(), in);
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(r.q_tes_kwh / 60.0 + r.c_bes_kwh / 200.0 <= used_m2 / 2.0 + 1e-6);
}

TEST_CASE("joint sizing never loses to the sequential procedure") {
  const Tariff t = tou_tariff(0.08, 0.24, 15.0);
  for (std::uint64_t seed : {101, 202, 303}) {
    const HorizonInputs in = demo_week_inputs(seed, t);
    SizingConfig cfg;
    cfg.cut_count = 4;
    const SizingResult joint = solve_sizing(cfg, fleet_template(), in);
    REQUIRE(joint.status == SolveStatus::kOptimal);
    const SizingResult seq = sequential_sizing(cfg, fleet_template(), in);
    INFO("seed " << seed << " joint " << joint.total_present_value << " seq "
                 << seq.total_present_value);
    CHECK(joint.total_present_value <=
          seq.total_present_value +
              1e-6 * (1.0 + std::abs(seq.total_present_value)));
  }
}

TEST_CASE("sizing hands off a dispatchable fleet") {
  const Tariff t = tou_tariff(0.10, 0.30, 11.0);
  SynthTemplate st;
  st.peak_cooling_kw = 500.0;
  st.peak_electric_kw = 350.0;
  st.days = 14;
  const ProfileSet span = synth_profiles(41, st);
  const HorizonInputs in = make_year_inputs(span, t, PlantConfig{}, 0.5, 0.5);
  SizingConfig cfg;
  cfg.cut_count = 4;
  const SizingResult r = solve_sizing(cfg, fleet_template(), in);
  REQUIRE(r.status == SolveStatus::kOptimal);
  const AssetFleet sized = apply_sizing(fleet_template(), r);
  PlantSim plant(sized, PlantConfig{}, 0.5, 0.5, span.start);
  MpcOptions opt;
  opt.horizon_steps = 24;
  const DispatchTrace tr = run_mpc(span, t, plant, opt);
  CHECK(tr.unmet_cooling_kwh <= 1e-6);
  for (const auto& s : tr.steps) CHECK(s.unmet_cooling_kw <= 1e-6);
}

TEST_CASE("commercial rounding explores bracketing catalog sizes") {
  const Tariff t = tou_tariff(0.10, 0.30, 11.0);
  const HorizonInputs in = demo_week_inputs(25, t, 600.0, 400.0);
  SizingConfig cfg;
  cfg.cut_count = 4;
  const SizingResult opt = solve_sizing(cfg, fleet_template(), in);
  REQUIRE(opt.status == SolveStatus::kOptimal);

  SECTION("optimum already on catalog points is kept") {
    SizeCatalog cat;
    cat.chiller_kw = {opt.c_chiller_kw};
    cat.tes_chiller_kw = {opt.c_tes_chiller_kw};
    cat.tes_kwh = {opt.q_tes_kwh};
    cat.bes_power_kw = {opt.p_bes_kw};
    cat.bes_kwh = {opt.c_bes_kwh};
    const SizingResult r =
        commercial_rounding(cfg, fleet_template(), in, opt, cat);
    CHECK(r.c_chiller_kw == Catch::Approx(opt.c_chiller_kw));
    CHECK(r.q_tes_kwh == Catch::Approx(opt.q_tes_kwh));
    CHECK(r.total_present_value ==
          Catch::Approx(opt.total_present_value).epsilon(1e-6));
  }
  SECTION("coarse catalog still returns the cheapest feasible combo") {
    SizeCatalog cat;
    auto grid = [](double v) {
      return std::vector<double>{0.0, std::floor(v / 500.0) * 500.0,
                                 std::ceil(v / 500.0) * 500.0 + 500.0};
    };
    cat.chiller_kw = {500.0, 1000.0, 1500.0, 2000.0, 2500.0, 3000.0};
    cat.tes_chiller_kw = grid(opt.c_tes_chiller_kw);
    cat.tes_kwh = grid(opt.q_tes_kwh);
    cat.bes_power_kw = grid(opt.p_bes_kw);
    cat.bes_kwh = grid(opt.c_bes_kwh);
    const SizingResult r =
        commercial_rounding(cfg, fleet_template(), in, opt, cat);
    REQUIRE(r.status == SolveStatus::kOptimal);
    // Rounded total can only be weakly worse than the continuous optimum.
    CHECK(r.total_present_value >= opt.total_present_value - 1e-6);
  }
  SECTION("empty catalogs are errors") {
    SizeCatalog cat;
    CHECK_THROWS_AS(commercial_rounding(cfg, fleet_template(), in, opt, cat),
                    InputError);
  }
}

TEST_CASE("config validation") {
  SizingConfig cfg;
  cfg.discount_rate = 1.5;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = SizingConfig{};
  cfg.alpha_tes_per_kwh = -1.0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = SizingConfig{};
  cfg.space = SpaceConstraint{100.0, 0.0, 10.0};
  CHECK_THROWS_AS(cfg.validate(), InputError);
}
