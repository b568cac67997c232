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

#ifndef STORPLAN_CONFIG_HPP
#define STORPLAN_CONFIG_HPP

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "storplan/assets.hpp"
#include "storplan/mpc.hpp"
#include "storplan/plant.hpp"
#include "storplan/profiles.hpp"
#include "storplan/sizing.hpp"
#include "storplan/tariff.hpp"

namespace storplan {

namespace cfgdetail {

using json = nlohmann::json;

inline void expect_keys(const json& j, const std::string& ctx,
                        std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw InputError(ctx + " must be an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || item.key() == k;
    if (!known) throw InputError("unknown key '" + item.key() + "' in " + ctx);
  }
}

inline const json& require(const json& j, const char* key,
                           const std::string& ctx) {
  if (!j.contains(key))
    throw InputError("missing key '" + std::string(key) + "' in " + ctx);
  return j.at(key);
}

inline double num(const json& j, const std::string& ctx) {
  if (!j.is_number()) throw InputError(ctx + " must be a number");
  return j.get<double>();
}

inline double get_num(const json& j, const char* key, const std::string& ctx) {
  return num(require(j, key, ctx), ctx + "." + key);
}

inline double get_num_or(const json& j, const char* key, double dflt,
                         const std::string& ctx) {
  if (!j.contains(key)) return dflt;
  return num(j.at(key), ctx + "." + key);
}

inline std::string get_str(const json& j, const char* key,
                           const std::string& ctx) {
  const json& v = require(j, key, ctx);
  if (!v.is_string()) throw InputError(ctx + "." + key + " must be a string");
  return v.get<std::string>();
}

}  // namespace cfgdetail

struct ProfileSource {
  enum class Kind { kCsv, kSynthetic } kind = Kind::kSynthetic;
  std::string csv_path;
  std::uint64_t seed = 1;
  SynthTemplate synth;
};

struct MpcConfig {
  int horizon_steps = 24;
  int control_steps = 1;
  int cut_breakpoints = 8;
  bool milp_commitment = false;
  double terminal_value_tes_per_kwh = 0.0;
  double terminal_value_bes_per_kwh = 0.0;
  double forecast_noise_std = 0.0;
  std::uint64_t noise_seed = 0;
};

enum class SizingResolution { kFull, kWeek };

struct SizingSection {
  SizingConfig config;
  SizingResolution resolution = SizingResolution::kWeek;
};

struct ScenarioConfig {
  std::string id;
  ProfileSource profiles;
  AssetFleet assets;
  double tes_initial_soc = 0.5;
  double bes_initial_soc = 0.5;
  Tariff tariff;
  PlantConfig plant;
  MpcConfig mpc;
  std::optional<SizingSection> sizing;

  ProfileSet load_profiles() const {
    if (profiles.kind == ProfileSource::Kind::kCsv)
      return load_profiles_csv(profiles.csv_path);
    return synth_profiles(profiles.seed, profiles.synth);
  }

  MpcOptions mpc_options() const {
    MpcOptions o;
    o.horizon_steps = mpc.horizon_steps;
    o.control_steps = mpc.control_steps;
    o.cut_count = mpc.cut_breakpoints;
    o.milp_commitment = mpc.milp_commitment;
    o.terminal_value_tes_per_kwh = mpc.terminal_value_tes_per_kwh;
    o.terminal_value_bes_per_kwh = mpc.terminal_value_bes_per_kwh;
    o.forecast_noise_std = mpc.forecast_noise_std;
    o.noise_seed = mpc.noise_seed;
    return o;
  }

  void validate() const {
    if (id.empty()) throw InputError("scenario id must not be empty");
    assets.validate();
    tariff.validate();
    if (mpc.horizon_steps < 1) throw InputError("mpc.horizon_steps must be >= 1");
    if (mpc.control_steps < 1 || mpc.control_steps > mpc.horizon_steps)
      throw InputError("mpc.control_steps must lie in [1, horizon_steps]");
    if (mpc.cut_breakpoints < 1)
      throw InputError("mpc.cut_breakpoints must be >= 1");
    if (tes_initial_soc < assets.tes.soc_min - 1e-9 ||
        tes_initial_soc > assets.tes.soc_max + 1e-9)
      throw InputError("tes.initial_soc outside its SOC bounds");
    if (bes_initial_soc < assets.bes.soc_min - 1e-9 ||
        bes_initial_soc > assets.bes.soc_max + 1e-9)
      throw InputError("bes.initial_soc outside its SOC bounds");
    if (sizing) sizing->config.validate();
  }
};

namespace cfgdetail {

inline ChillerCurves parse_curves(const json& j, const std::string& ctx) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "example_centrifugal") return example_centrifugal_curves();
    if (s == "identity") return ChillerCurves::identity();
    throw InputError(ctx + ": unknown named curve set '" + s + "'");
  }
  expect_keys(j, ctx, {"cap_ft", "eir_ft", "eir_plr"});
  ChillerCurves c;
  auto fill = [&](const char* key, double* dst, int n) {
    const json& arr = require(j, key, ctx);
    if (!arr.is_array() || int(arr.size()) != n)
      throw InputError(ctx + "." + key + " must be an array of " +
                       std::to_string(n) + " numbers");
    for (int i = 0; i < n; ++i) dst[i] = num(arr[std::size_t(i)], ctx);
  };
  fill("cap_ft", c.cap_ft, 6);
  fill("eir_ft", c.eir_ft, 6);
  fill("eir_plr", c.eir_plr, 3);
  return c;
}

inline ChillerSpec parse_chiller(const json& j, const std::string& ctx) {
  expect_keys(j, ctx, {"capacity_kw", "cop_ref", "min_plr", "plr_max", "curves"});
  ChillerSpec s;
  s.capacity_kw = get_num(j, "capacity_kw", ctx);
  s.cop_ref = get_num(j, "cop_ref", ctx);
  s.min_plr = get_num_or(j, "min_plr", 0.0, ctx);
  s.plr_max = get_num_or(j, "plr_max", 1.0, ctx);
  if (j.contains("curves")) s.curves = parse_curves(j.at("curves"), ctx + ".curves");
  s.validate();
  return s;
}

inline PiecewiseLinear parse_rate_curve(const json& j, const std::string& ctx) {
  if (j.is_number()) return PiecewiseLinear::constant(num(j, ctx));
  expect_keys(j, ctx, {"soc", "kw"});
  const json& xs = require(j, "soc", ctx);
  const json& ys = require(j, "kw", ctx);
  if (!xs.is_array() || !ys.is_array() || xs.size() != ys.size())
    throw InputError(ctx + ": 'soc' and 'kw' must be equal-length arrays");
  std::vector<double> x, y;
  for (const auto& v : xs) x.push_back(num(v, ctx));
  for (const auto& v : ys) y.push_back(num(v, ctx));
  return PiecewiseLinear(std::move(x), std::move(y));
}

inline Tariff parse_tariff(const json& j, const std::string& ctx) {
  expect_keys(j, ctx,
              {"name", "default_energy_price_per_kwh", "periods", "demand"});
  Tariff t;
  if (j.contains("name")) t.name = get_str(j, "name", ctx);
  if (j.contains("default_energy_price_per_kwh"))
    t.default_price_per_kwh = get_num(j, "default_energy_price_per_kwh", ctx);
  if (j.contains("periods")) {
    const json& arr = j.at("periods");
    if (!arr.is_array()) throw InputError(ctx + ".periods must be an array");
    for (const auto& pj : arr) {
      const std::string pctx = ctx + ".periods[]";
      expect_keys(pj, pctx,
                  {"name", "months", "days", "start_hour", "end_hour",
                   "price_per_kwh"});
      TariffPeriod p;
      if (pj.contains("name")) p.name = get_str(pj, "name", pctx);
      if (pj.contains("months")) {
        for (const auto& m : pj.at("months")) p.months.push_back(m.get<int>());
      }
      if (pj.contains("days")) {
        const std::string d = get_str(pj, "days", pctx);
        if (d == "all") p.days = DayKind::kAll;
        else if (d == "weekday") p.days = DayKind::kWeekday;
        else if (d == "weekend") p.days = DayKind::kWeekend;
        else throw InputError(pctx + ".days must be all|weekday|weekend");
      }
      p.start_hour = get_num(pj, "start_hour", pctx);
      p.end_hour = get_num(pj, "end_hour", pctx);
      p.price_per_kwh = get_num(pj, "price_per_kwh", pctx);
      t.periods.push_back(std::move(p));
    }
  }
  if (j.contains("demand")) {
    const json& dj = j.at("demand");
    expect_keys(dj, ctx + ".demand", {"default_rate_per_kw", "monthly"});
    t.default_demand_rate_per_kw =
        get_num_or(dj, "default_rate_per_kw", 0.0, ctx + ".demand");
    if (dj.contains("monthly")) {
      for (const auto& item : dj.at("monthly").items()) {
        const int m = std::stoi(item.key());
        t.demand_rate_per_kw[m] = num(item.value(), ctx + ".demand.monthly");
      }
    }
  }
  t.validate();
  return t;
}

inline SizingSection parse_sizing(const json& j, const std::string& ctx) {
  expect_keys(j, ctx,
              {"unit_prices", "max_capacity", "space", "project_years",
               "discount_rate", "cut_breakpoints", "tes_c_rate_charge",
               "tes_c_rate_discharge", "energy_weight", "demand_weight",
               "resolution"});
  SizingSection s;
  SizingConfig& c = s.config;
  if (j.contains("unit_prices")) {
    const json& up = j.at("unit_prices");
    expect_keys(up, ctx + ".unit_prices",
                {"chiller_per_kw", "tes_chiller_per_kw", "tes_per_kwh",
                 "bes_power_per_kw", "bes_per_kwh"});
    c.alpha_chiller_per_kw =
        get_num_or(up, "chiller_per_kw", c.alpha_chiller_per_kw, ctx);
    c.alpha_tes_chiller_per_kw =
        get_num_or(up, "tes_chiller_per_kw", c.alpha_tes_chiller_per_kw, ctx);
    c.alpha_tes_per_kwh = get_num_or(up, "tes_per_kwh", c.alpha_tes_per_kwh, ctx);
    c.alpha_bes_power_per_kw =
        get_num_or(up, "bes_power_per_kw", c.alpha_bes_power_per_kw, ctx);
    c.alpha_bes_per_kwh = get_num_or(up, "bes_per_kwh", c.alpha_bes_per_kwh, ctx);
  }
  if (j.contains("max_capacity")) {
    const json& mc = j.at("max_capacity");
    expect_keys(mc, ctx + ".max_capacity",
                {"chiller_kw", "tes_chiller_kw", "tes_kwh", "bes_power_kw",
                 "bes_kwh"});
    c.max_chiller_kw = get_num_or(mc, "chiller_kw", c.max_chiller_kw, ctx);
    c.max_tes_chiller_kw =
        get_num_or(mc, "tes_chiller_kw", c.max_tes_chiller_kw, ctx);
    c.max_tes_kwh = get_num_or(mc, "tes_kwh", c.max_tes_kwh, ctx);
    c.max_bes_power_kw = get_num_or(mc, "bes_power_kw", c.max_bes_power_kw, ctx);
    c.max_bes_kwh = get_num_or(mc, "bes_kwh", c.max_bes_kwh, ctx);
  }
  if (j.contains("space")) {
    const json& sp = j.at("space");
    expect_keys(sp, ctx + ".space", {"max_m2", "tes_kwh_per_m2", "bes_kwh_per_m2"});
    SpaceConstraint sc;
    sc.max_m2 = get_num(sp, "max_m2", ctx + ".space");
    sc.tes_kwh_per_m2 = get_num(sp, "tes_kwh_per_m2", ctx + ".space");
    sc.bes_kwh_per_m2 = get_num(sp, "bes_kwh_per_m2", ctx + ".space");
    c.space = sc;
  }
  c.project_years = int(get_num_or(j, "project_years", c.project_years, ctx));
  c.discount_rate = get_num_or(j, "discount_rate", c.discount_rate, ctx);
  c.cut_count = int(get_num_or(j, "cut_breakpoints", c.cut_count, ctx));
  c.tes_c_rate_charge = get_num_or(j, "tes_c_rate_charge", 0.0, ctx);
  c.tes_c_rate_discharge = get_num_or(j, "tes_c_rate_discharge", 0.0, ctx);
  c.energy_weight = get_num_or(j, "energy_weight", 0.0, ctx);
  c.demand_weight = get_num_or(j, "demand_weight", 0.0, ctx);
  if (j.contains("resolution")) {
    const std::string r = get_str(j, "resolution", ctx);
    if (r == "full") s.resolution = SizingResolution::kFull;
    else if (r == "week") s.resolution = SizingResolution::kWeek;
    else throw InputError(ctx + ".resolution must be full|week");
  }
  c.validate();
  return s;
}

}  // namespace cfgdetail

inline ScenarioConfig parse_scenario_config(const nlohmann::json& j) {
  using namespace cfgdetail;
  expect_keys(j, "scenario",
              {"id", "profiles", "assets", "tariff", "plant", "mpc", "sizing"});
  ScenarioConfig sc;
  sc.id = get_str(j, "id", "scenario");

  const json& pj = require(j, "profiles", "scenario");
  expect_keys(pj, "profiles", {"csv", "synthetic"});
  if (pj.contains("csv")) {
    sc.profiles.kind = ProfileSource::Kind::kCsv;
    sc.profiles.csv_path = pj.at("csv").get<std::string>();
  } else if (pj.contains("synthetic")) {
    const json& sj = pj.at("synthetic");
    expect_keys(sj, "profiles.synthetic",
                {"seed", "peak_cooling_kw", "peak_electric_kw", "climate",
                 "year", "days", "dt_h"});
    sc.profiles.kind = ProfileSource::Kind::kSynthetic;
    sc.profiles.seed = std::uint64_t(get_num_or(sj, "seed", 1, "synthetic"));
    sc.profiles.synth.peak_cooling_kw =
        get_num(sj, "peak_cooling_kw", "synthetic");
    sc.profiles.synth.peak_electric_kw =
        get_num(sj, "peak_electric_kw", "synthetic");
    if (sj.contains("climate"))
      sc.profiles.synth.climate =
          climate_shape_from_string(get_str(sj, "climate", "synthetic"));
    sc.profiles.synth.year = int(get_num_or(sj, "year", 2021, "synthetic"));
    sc.profiles.synth.days = int(get_num_or(sj, "days", 365, "synthetic"));
    sc.profiles.synth.dt_h = get_num_or(sj, "dt_h", 1.0, "synthetic");
  } else {
    throw InputError("profiles needs either 'csv' or 'synthetic'");
  }

  const json& aj = require(j, "assets", "scenario");
  expect_keys(aj, "assets", {"base_chiller", "tes_chiller", "tes", "bes"});
  sc.assets.base_chiller =
      parse_chiller(require(aj, "base_chiller", "assets"), "assets.base_chiller");
  sc.assets.tes_chiller =
      parse_chiller(require(aj, "tes_chiller", "assets"), "assets.tes_chiller");
  {
    const json& tj = require(aj, "tes", "assets");
    expect_keys(tj, "assets.tes",
                {"capacity_kwh", "soc_min", "soc_max", "initial_soc",
                 "standby_loss_per_step", "max_charge_kw", "max_discharge_kw"});
    TesSpec& t = sc.assets.tes;
    t.capacity_kwh = get_num(tj, "capacity_kwh", "assets.tes");
    t.soc_min = get_num_or(tj, "soc_min", 0.0, "assets.tes");
    t.soc_max = get_num_or(tj, "soc_max", 1.0, "assets.tes");
    t.standby_loss_per_step =
        get_num_or(tj, "standby_loss_per_step", 0.0, "assets.tes");
    if (tj.contains("max_charge_kw"))
      t.max_charge_kw = parse_rate_curve(tj.at("max_charge_kw"),
                                         "assets.tes.max_charge_kw");
    if (tj.contains("max_discharge_kw"))
      t.max_discharge_kw = parse_rate_curve(tj.at("max_discharge_kw"),
                                            "assets.tes.max_discharge_kw");
    sc.tes_initial_soc = get_num_or(tj, "initial_soc", 0.5, "assets.tes");
    t.validate();
  }
  {
    const json& bj = require(aj, "bes", "assets");
    expect_keys(bj, "assets.bes",
                {"capacity_kwh", "power_max_kw", "eta_charge", "eta_discharge",
                 "soc_min", "soc_max", "initial_soc"});
    BesSpec& b = sc.assets.bes;
    b.capacity_kwh = get_num(bj, "capacity_kwh", "assets.bes");
    b.power_max_kw = get_num(bj, "power_max_kw", "assets.bes");
    b.eta_charge = get_num_or(bj, "eta_charge", 0.93, "assets.bes");
    b.eta_discharge = get_num_or(bj, "eta_discharge", 0.93, "assets.bes");
    b.soc_min = get_num_or(bj, "soc_min", 0.0, "assets.bes");
    b.soc_max = get_num_or(bj, "soc_max", 1.0, "assets.bes");
    sc.bes_initial_soc = get_num_or(bj, "initial_soc", 0.5, "assets.bes");
    b.validate();
  }

  sc.tariff = parse_tariff(require(j, "tariff", "scenario"), "tariff");

  if (j.contains("plant")) {
    const json& plj = j.at("plant");
    expect_keys(plj, "plant",
                {"t_chw_base_c", "t_chw_tes_c", "condenser_approach_k",
                 "op_min_c", "op_max_c"});
    sc.plant.t_chw_base_c = get_num_or(plj, "t_chw_base_c", 6.67, "plant");
    sc.plant.t_chw_tes_c = get_num_or(plj, "t_chw_tes_c", -5.0, "plant");
    sc.plant.condenser_approach_k =
        get_num_or(plj, "condenser_approach_k", 3.0, "plant");
    sc.plant.op_range.min_c = get_num_or(plj, "op_min_c", -10.0, "plant");
    sc.plant.op_range.max_c = get_num_or(plj, "op_max_c", 60.0, "plant");
  }

  if (j.contains("mpc")) {
    const json& mj = j.at("mpc");
    expect_keys(mj, "mpc",
                {"horizon_steps", "control_steps", "cut_breakpoints",
                 "milp_commitment", "terminal_value_tes_per_kwh",
                 "terminal_value_bes_per_kwh", "forecast_noise_std",
                 "noise_seed"});
    sc.mpc.horizon_steps = int(get_num_or(mj, "horizon_steps", 24, "mpc"));
    sc.mpc.control_steps = int(get_num_or(mj, "control_steps", 1, "mpc"));
    sc.mpc.cut_breakpoints = int(get_num_or(mj, "cut_breakpoints", 8, "mpc"));
    if (mj.contains("milp_commitment"))
      sc.mpc.milp_commitment = mj.at("milp_commitment").get<bool>();
    sc.mpc.terminal_value_tes_per_kwh =
        get_num_or(mj, "terminal_value_tes_per_kwh", 0.0, "mpc");
    sc.mpc.terminal_value_bes_per_kwh =
        get_num_or(mj, "terminal_value_bes_per_kwh", 0.0, "mpc");
    sc.mpc.forecast_noise_std = get_num_or(mj, "forecast_noise_std", 0.0, "mpc");
    sc.mpc.noise_seed = std::uint64_t(get_num_or(mj, "noise_seed", 0, "mpc"));
  }

  if (j.contains("sizing"))
    sc.sizing = cfgdetail::parse_sizing(j.at("sizing"), "sizing");

  sc.validate();
  return sc;
}

inline ScenarioConfig load_scenario_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("config '" + path + "': " + e.what());
  }
  try {
    return parse_scenario_config(j);
  } catch (const InputError& e) {
    throw InputError("config '" + path + "': " + e.what());
  }
}

}  // namespace storplan

#endif  // STORPLAN_CONFIG_HPP
