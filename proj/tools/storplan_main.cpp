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

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "storplan/storplan.hpp"

namespace fs = std::filesystem;
using namespace storplan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitSolverLimit = 4;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> breakpoints;
  std::optional<int> horizon;
  std::optional<double> capital_scale;
  std::optional<std::string> mode;  // lp | milp
};

void apply_overrides(ScenarioConfig& sc, const Overrides& ov) {
  if (ov.seed) sc.profiles.seed = *ov.seed;
  if (ov.breakpoints) {
    sc.mpc.cut_breakpoints = *ov.breakpoints;
    if (sc.sizing) sc.sizing->config.cut_count = *ov.breakpoints;
  }
  if (ov.horizon) sc.mpc.horizon_steps = *ov.horizon;
  if (ov.mode) {
    if (*ov.mode == "milp") sc.mpc.milp_commitment = true;
    else if (*ov.mode == "lp") sc.mpc.milp_commitment = false;
    else throw InputError("--mode must be lp or milp");
  }
  if (ov.capital_scale) {
    if (!sc.sizing) throw InputError("--capital-scale needs a sizing section");
    SizingConfig& c = sc.sizing->config;
    c.alpha_chiller_per_kw *= *ov.capital_scale;
    c.alpha_tes_chiller_per_kw *= *ov.capital_scale;
    c.alpha_tes_per_kwh *= *ov.capital_scale;
    c.alpha_bes_power_per_kw *= *ov.capital_scale;
    c.alpha_bes_per_kwh *= *ov.capital_scale;
  }
  sc.validate();
}

/// Chiller capacity that can just serve the profile peak on its own
/// (the autosized no-storage reference machine).
double autosized_baseline_capacity(const ScenarioConfig& sc,
                                   const ProfileSet& profiles) {
  double cap = 0.0;
  for (int i = 0; i < profiles.size(); ++i) {
    const OperatingPoint op{
        sc.plant.t_chw_base_c,
        condenser_temperature(profiles.oat_c[std::size_t(i)],
                              sc.plant.condenser_approach_k, sc.plant.op_range)
            .t_cond_c};
    const CurveValues v =
        eval_curves(sc.assets.base_chiller.curves, op, 0.0);
    if (!(v.psi1 > 0))
      throw InputError("baseline autosizing: nonpositive capacity fraction");
    cap = std::max(cap, profiles.cooling_kw[std::size_t(i)] /
                            (v.psi1 * sc.assets.base_chiller.plr_max));
  }
  return cap * (1.0 + 1e-9);
}

SizingResult run_sizing(const ScenarioConfig& sc, const ProfileSet& profiles) {
  if (!sc.sizing) throw InputError("scenario has no sizing section");
  const ProfileSet rep = sc.sizing->resolution == SizingResolution::kWeek
                             ? representative_week(profiles)
                             : profiles;
  const HorizonInputs year = make_year_inputs(rep, sc.tariff, sc.plant,
                                              sc.tes_initial_soc,
                                              sc.bes_initial_soc);
  SizingConfig cfg = sc.sizing->config;
  cfg.tes_soc0 = sc.tes_initial_soc;
  cfg.bes_soc0 = sc.bes_initial_soc;
  return solve_sizing(cfg, sc.assets, year);
}

struct ScenarioOutput {
  RunReport report;
  DispatchTrace baseline;
  DispatchTrace optimized;
};

ScenarioOutput run_dispatch_pipeline(const ScenarioConfig& sc,
                                     const ProfileSet& profiles,
                                     std::optional<SizingResult> sizing) {
  AssetFleet fleet = sc.assets;
  if (sizing) {
    if (sizing->status != SolveStatus::kOptimal)
      throw InfeasibleProblemError("sizing was not optimal: " +
                                   std::string(to_string(sizing->status)));
    fleet = apply_sizing(sc.assets, *sizing);
  }
  ChillerSpec baseline_chiller = sc.assets.base_chiller;
  baseline_chiller.capacity_kw =
      std::max(baseline_chiller.capacity_kw,
               autosized_baseline_capacity(sc, profiles));

  ScenarioOutput out;
  out.baseline =
      baseline_dispatch(profiles, sc.tariff, baseline_chiller, sc.plant);
  PlantSim plant(fleet, sc.plant, sc.tes_initial_soc, sc.bes_initial_soc,
                 profiles.start);
  out.optimized = run_mpc(profiles, sc.tariff, plant, sc.mpc_options());
  out.report = make_run_report(sc.id, out.baseline, out.optimized,
                               std::move(sizing));
  return out;
}

void write_dispatch_outputs(const fs::path& dir, const ScenarioOutput& out) {
  fs::create_directories(dir);
  write_trace_csv((dir / "trace.csv").string(), out.optimized, &out.baseline);
  write_json((dir / "report.json").string(), report_to_json(out.report));
  write_soc_csv((dir / "soc.csv").string(), out.optimized);
  write_demand_csv((dir / "demand.csv").string(), out.baseline, out.optimized);
}

int cmd_size(const std::string& config_path, const std::string& out_dir,
             const Overrides& ov) {
  ScenarioConfig sc = load_scenario_config(config_path);
  apply_overrides(sc, ov);
  const ProfileSet profiles = sc.load_profiles();
  const SizingResult result = run_sizing(sc, profiles);
  fs::create_directories(out_dir);
  nlohmann::json j = sizing_to_json(result);
  j["scenario"] = sc.id;
  write_json((fs::path(out_dir) / "sizing.json").string(), j);
  std::ofstream table(fs::path(out_dir) / "sizing_table.txt");
  table << "Scenario: " << sc.id << "\n" << sizing_table(result);
  std::cout << sizing_table(result);
  if (result.status != SolveStatus::kOptimal) {
    std::cerr << "sizing status: " << to_string(result.status) << "\n";
    return result.status == SolveStatus::kInfeasible ? kExitInfeasible
                                                     : kExitSolverLimit;
  }
  return kExitOk;
}

SizingResult load_sizing_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open sizes file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("sizes '" + path + "': " + e.what());
  }
  SizingResult r;
  try {
    r.c_chiller_kw = j.at("base_chiller_kw").get<double>();
    r.c_tes_chiller_kw = j.at("tes_chiller_kw").get<double>();
    r.q_tes_kwh = j.at("tes_kwh").get<double>();
    r.p_bes_kw = j.at("bes_power_kw").get<double>();
    r.c_bes_kwh = j.at("bes_kwh").get<double>();
    const std::string st = j.at("status").get<std::string>();
    r.status = st == "optimal" ? SolveStatus::kOptimal
                               : SolveStatus::kIterationLimit;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("sizes '" + path + "': " + e.what());
  }
  return r;
}

int cmd_dispatch(const std::string& config_path, const std::string& out_dir,
                 const std::string& sizes_path, const Overrides& ov) {
  ScenarioConfig sc = load_scenario_config(config_path);
  apply_overrides(sc, ov);
  const ProfileSet profiles = sc.load_profiles();
  std::optional<SizingResult> sizing;
  if (!sizes_path.empty()) sizing = load_sizing_json(sizes_path);
  const ScenarioOutput out = run_dispatch_pipeline(sc, profiles, sizing);
  write_dispatch_outputs(out_dir, out);
  std::printf("%-24s total $%.2f -> $%.2f (saving %.2f%%), peak %.1f -> %.1f kW\n",
              sc.id.c_str(), out.report.baseline_bill.total,
              out.report.optimized_bill.total, out.report.saving_total_pct,
              out.report.baseline_peak_kw, out.report.optimized_peak_kw);
  return kExitOk;
}

int cmd_sweep(const std::vector<std::string>& config_paths,
              const std::string& out_dir, const Overrides& ov) {
  if (config_paths.empty()) throw InputError("sweep needs at least one config");
  struct Row {
    std::string id;
    bool ok = false;
    std::string error;
    RunReport report;
  };

  std::vector<ScenarioConfig> configs;
  for (const auto& path : config_paths) {
    ScenarioConfig sc = load_scenario_config(path);
    apply_overrides(sc, ov);
    configs.push_back(std::move(sc));
  }
  std::sort(configs.begin(), configs.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });

  // Scenarios are independent; run them on separate threads and gather in
  // the deterministic (sorted) order.
  std::vector<std::future<Row>> futures;
  for (const auto& sc : configs) {
    futures.push_back(std::async(std::launch::async, [&sc, &out_dir]() {
      Row row;
      row.id = sc.id;
      try {
        const ProfileSet profiles = sc.load_profiles();
        std::optional<SizingResult> sizing;
        if (sc.sizing) sizing = run_sizing(sc, profiles);
        const ScenarioOutput out = run_dispatch_pipeline(sc, profiles, sizing);
        write_dispatch_outputs(fs::path(out_dir) / sc.id, out);
        row.report = out.report;
        row.ok = true;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      return row;
    }));
  }
  std::vector<Row> rows;
  for (auto& f : futures) rows.push_back(f.get());

  fs::create_directories(out_dir);
  std::ofstream csv(fs::path(out_dir) / "sweep.csv");
  csv << "scenario,status,base_chiller_kw,tes_chiller_kw,tes_kwh,bes_power_kw,"
         "bes_kwh,storage_capital,baseline_total,optimized_total,"
         "saving_energy,saving_demand,saving_total,saving_total_pct,"
         "peak_reduction_kw,peak_reduction_pct\n";
  bool any_failed = false;
  char buf[512];
  for (const auto& row : rows) {
    if (!row.ok) {
      any_failed = true;
      csv << row.id << ",failed,,,,,,,,,,,,,,\n";
      std::cerr << row.id << " failed: " << row.error << "\n";
      continue;
    }
    const RunReport& r = row.report;
    double cch = 0, ctc = 0, qt = 0, pb = 0, cb = 0, storage_capital = 0;
    if (r.sizing) {
      cch = r.sizing->c_chiller_kw;
      ctc = r.sizing->c_tes_chiller_kw;
      qt = r.sizing->q_tes_kwh;
      pb = r.sizing->p_bes_kw;
      cb = r.sizing->c_bes_kwh;
      storage_capital = r.sizing->storage_capital;
    }
    std::snprintf(buf, sizeof(buf),
                  "%s,ok,%.1f,%.1f,%.1f,%.1f,%.1f,%.2f,%.2f,%.2f,%.2f,%.2f,"
                  "%.2f,%.3f,%.2f,%.3f\n",
                  row.id.c_str(), cch, ctc, qt, pb, cb, storage_capital,
                  r.baseline_bill.total, r.optimized_bill.total,
                  r.saving_energy, r.saving_demand, r.saving_total,
                  r.saving_total_pct, r.peak_reduction_kw,
                  r.peak_reduction_pct);
    csv << buf;
    std::printf("%-24s saving $%.2f (%.2f%%), peak -%.1f kW\n", row.id.c_str(),
                row.report.saving_total, row.report.saving_total_pct,
                row.report.peak_reduction_kw);
  }
  return any_failed ? kExitInternal : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint sizing and receding-horizon dispatch of building "
               "thermal and battery storage"};
  app.require_subcommand(1);

  Overrides ov;
  std::string config_path, out_dir = "out", sizes_path;
  std::vector<std::string> sweep_configs;
  std::uint64_t seed_arg = 0;
  int breakpoints_arg = 0, horizon_arg = 0;
  double capital_scale_arg = 0;
  std::string mode_arg;

  auto add_common = [&](CLI::App* cmd, bool multi_config) {
    if (multi_config)
      cmd->add_option("--config", sweep_configs, "scenario config files")
          ->required()
          ->expected(-1);
    else
      cmd->add_option("--config", config_path, "scenario config file")
          ->required();
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--seed", seed_arg, "override synthetic profile seed");
    cmd->add_option("--breakpoints", breakpoints_arg,
                    "override cut breakpoints");
    cmd->add_option("--horizon", horizon_arg, "override MPC horizon steps");
    cmd->add_option("--capital-scale", capital_scale_arg,
                    "scale all sizing unit prices");
    cmd->add_option("--mode", mode_arg, "lp or milp dispatch mode");
  };

  CLI::App* size_cmd = app.add_subcommand("size", "solve the joint sizing problem");
  add_common(size_cmd, false);
  CLI::App* dispatch_cmd =
      app.add_subcommand("dispatch", "run baseline and MPC dispatch for a year");
  add_common(dispatch_cmd, false);
  dispatch_cmd->add_option("--sizes", sizes_path,
                           "sizing.json with capacities to apply");
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run several scenarios and tabulate");
  add_common(sweep_cmd, true);

  CLI11_PARSE(app, argc, argv);

  if (seed_arg != 0) ov.seed = seed_arg;
  if (breakpoints_arg != 0) ov.breakpoints = breakpoints_arg;
  if (horizon_arg != 0) ov.horizon = horizon_arg;
  if (capital_scale_arg != 0) ov.capital_scale = capital_scale_arg;
  if (!mode_arg.empty()) ov.mode = mode_arg;

  try {
    if (app.got_subcommand(size_cmd))
      return cmd_size(config_path, out_dir, ov);
    if (app.got_subcommand(dispatch_cmd))
      return cmd_dispatch(config_path, out_dir, sizes_path, ov);
    if (app.got_subcommand(sweep_cmd))
      return cmd_sweep(sweep_configs, out_dir, ov);
  } catch (const InputError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InfeasibleProblemError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const SolverLimitError& e) {
    std::cerr << "solver limit: " << e.what() << "\n";
    return kExitSolverLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
