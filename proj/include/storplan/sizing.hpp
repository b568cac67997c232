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

#ifndef STORPLAN_SIZING_HPP
#define STORPLAN_SIZING_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "storplan/dispatch.hpp"
#include "storplan/plant.hpp"
#include "storplan/profiles.hpp"
#include "storplan/simplex.hpp"
#include "storplan/tariff.hpp"

namespace storplan {

/// Present value of one currency unit per year for `years` years at the
/// given discount rate.
inline double present_worth_factor(int years, double rate) {
  if (years < 0) throw InputError("project years must be >= 0");
  if (rate < 0) throw InputError("discount rate must be >= 0");
  double pwf = 0.0;
  for (int y = 1; y <= years; ++y) pwf += std::pow(1.0 + rate, -y);
  return pwf;
}

struct SpaceConstraint {
  double max_m2 = 500.0;
  double tes_kwh_per_m2 = 60.0;  // energy density mapping floor space to kWh
  double bes_kwh_per_m2 = 200.0;
};

struct SizingConfig {
  // Installed-cost unit prices.
  double alpha_chiller_per_kw = 120.0;
  double alpha_tes_chiller_per_kw = 120.0;
  double alpha_tes_per_kwh = 40.0;
  double alpha_bes_power_per_kw = 153.0;
  double alpha_bes_per_kwh = 355.0;
  // Hard capacity caps.
  double max_chiller_kw = 10000.0;
  double max_tes_chiller_kw = 10000.0;
  double max_tes_kwh = 10000.0;
  double max_bes_power_kw = 10000.0;
  double max_bes_kwh = 10000.0;
  std::optional<SpaceConstraint> space;
  // Economic horizon.
  int project_years = 20;
  double discount_rate = 0.05;
  // Model controls.
  int cut_count = 5;
  double tes_c_rate_charge = 0.0;    // per-hour fraction of TES energy; 0 = off
  double tes_c_rate_discharge = 0.0;
  // Operating-cost weights lifting the profile to a full year; 0 = derive
  // from the profile span (energy) and months represented (demand).
  double energy_weight = 0.0;
  double demand_weight = 0.0;
  double tes_soc0 = 0.5;
  double bes_soc0 = 0.5;
  // Pin a capacity instead of optimizing it (sequential studies, catalog
  // evaluation).
  std::optional<double> fixed_chiller_kw, fixed_tes_chiller_kw, fixed_tes_kwh,
      fixed_bes_power_kw, fixed_bes_kwh;

  void validate() const {
    for (double a : {alpha_chiller_per_kw, alpha_tes_chiller_per_kw,
                     alpha_tes_per_kwh, alpha_bes_power_per_kw,
                     alpha_bes_per_kwh})
      if (a < 0) throw InputError("sizing unit prices must be >= 0");
    if (project_years < 1) throw InputError("project years must be >= 1");
    if (discount_rate < 0 || discount_rate >= 1)
      throw InputError("discount rate must lie in [0, 1)");
    if (space && (!(space->tes_kwh_per_m2 > 0) || !(space->bes_kwh_per_m2 > 0)))
      throw InputError("space constraint needs positive energy densities");
    if (cut_count < 1) throw InputError("sizing needs at least one cut");
  }
};

struct SizingVarIndex {
  int c_chiller = -1, c_tes_chiller = -1, q_tes = -1, p_bes = -1, c_bes = -1;
  std::vector<int> q_ch, q_dis, e_tes, p_ch, p_dis, e_bes, p_base, p_tesch;
  std::vector<std::pair<MonthKey, int>> p_peak;
};

struct SizingProblem {
  LpProblem lp;
  SizingVarIndex idx;
  double pwf = 1.0;
  double energy_weight = 1.0;
  double demand_weight = 1.0;
  double dt_h = 1.0;
};

struct SizingResult {
  double c_chiller_kw = 0, c_tes_chiller_kw = 0, q_tes_kwh = 0, p_bes_kw = 0,
         c_bes_kwh = 0;
  double capital = 0;
  double storage_capital = 0;  // capital excluding the base chiller
  double annual_operating = 0;
  double operating_present_value = 0;
  double total_present_value = 0;
  double pwf = 1.0;
  SolveStatus status = SolveStatus::kIterationLimit;
  long iterations = 0;
};

/// Full-profile horizon inputs (prices, operating points, demand rates) for
/// sizing and open-loop dispatch evaluation.
inline HorizonInputs make_year_inputs(const ProfileSet& profiles,
                                      const Tariff& tariff,
                                      const PlantConfig& cfg, double tes_soc0,
                                      double bes_soc0) {
  profiles.validate();
  tariff.validate();
  HorizonInputs in;
  in.start = profiles.start;
  in.dt_h = profiles.dt_h;
  in.steps = profiles.size();
  in.tes_soc0 = tes_soc0;
  in.bes_soc0 = bes_soc0;
  const auto n = std::size_t(profiles.size());
  in.q_load_kw = profiles.cooling_kw;
  in.p_non_kw = profiles.electric_kw;
  in.price_per_kwh.resize(n);
  in.op_base.resize(n);
  in.op_tes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Timestamp t = profiles.timestamp_at(int(i));
    in.price_per_kwh[i] = price_at(tariff, t);
    const double tc =
        condenser_temperature(profiles.oat_c[i], cfg.condenser_approach_k,
                              cfg.op_range)
            .t_cond_c;
    in.op_base[i] = OperatingPoint{cfg.t_chw_base_c, tc};
    in.op_tes[i] = OperatingPoint{cfg.t_chw_tes_c, tc};
    const MonthKey m = month_key(t);
    if (!in.demand_rate_per_kw.count(m))
      in.demand_rate_per_kw[m] = demand_rate_at(tariff, m);
  }
  return in;
}

/// The calendar-aligned week containing the profile's peak cooling step;
/// used as the representative slice for fast sizing studies.
inline ProfileSet representative_week(const ProfileSet& year) {
  year.validate();
  const int steps_per_day = std::max(1, int(std::lround(24.0 / year.dt_h)));
  const int week = 7 * steps_per_day;
  if (year.size() <= week) return year;
  int peak_step = 0;
  for (int i = 1; i < year.size(); ++i)
    if (year.cooling_kw[std::size_t(i)] > year.cooling_kw[std::size_t(peak_step)])
      peak_step = i;
  int start_day = peak_step / steps_per_day - 3;
  start_day = std::clamp(start_day, 0, year.size() / steps_per_day - 7);
  const int s0 = start_day * steps_per_day;
  ProfileSet out;
  out.start = year.timestamp_at(s0);
  out.dt_h = year.dt_h;
  out.cooling_kw.assign(year.cooling_kw.begin() + s0,
                        year.cooling_kw.begin() + s0 + week);
  out.electric_kw.assign(year.electric_kw.begin() + s0,
                         year.electric_kw.begin() + s0 + week);
  out.oat_c.assign(year.oat_c.begin() + s0, year.oat_c.begin() + s0 + week);
  out.validate();
  return out;
}

/// One monolithic LP: asset capacities are decision variables alongside
/// every dispatch variable of the representative profile. Storage states are
/// tracked in absolute kWh so the capacity-dependent SOC bounds and rate
/// limits stay linear in the capacity variables; chiller power uses
/// capacity-coupled tangent planes, linear in capacity and load jointly.
inline SizingProblem build_sizing_problem(const SizingConfig& cfg,
                                          const AssetFleet& tpl,
                                          const HorizonInputs& in) {
  cfg.validate();
  tpl.validate();
  in.validate();
  const int K = in.steps;
  const double dt = in.dt_h;
  const TesSpec& tes = tpl.tes;
  const BesSpec& bes = tpl.bes;
  const double keep = 1.0 - tes.standby_loss_per_step;

  SizingProblem out;
  out.dt_h = dt;
  out.pwf = present_worth_factor(cfg.project_years, cfg.discount_rate);
  out.energy_weight =
      cfg.energy_weight > 0 ? cfg.energy_weight : 8760.0 / (dt * K);
  std::vector<MonthKey> month_of_step;
  month_of_step.resize(std::size_t(K));
  std::map<MonthKey, int> months;
  for (int t = 0; t < K; ++t) {
    month_of_step[std::size_t(t)] = in.month_at(t);
    months.try_emplace(month_of_step[std::size_t(t)], -1);
  }
  out.demand_weight = cfg.demand_weight > 0
                          ? cfg.demand_weight
                          : 12.0 / double(months.size());

  LpProblem& lp = out.lp;
  SizingVarIndex& ix = out.idx;

  auto cap_var = [&](const char* n, double maxv, std::optional<double> fixed) {
    const double lo = fixed ? *fixed : 0.0;
    const double hi = fixed ? *fixed : maxv;
    if (fixed && *fixed > maxv + 1e-9)
      throw InputError(std::string("fixed capacity for ") + n +
                       " exceeds its cap");
    return lp.add_variable(n, lo, hi);
  };
  ix.c_chiller = cap_var("c_chiller", cfg.max_chiller_kw, cfg.fixed_chiller_kw);
  ix.c_tes_chiller =
      cap_var("c_tes_chiller", cfg.max_tes_chiller_kw, cfg.fixed_tes_chiller_kw);
  ix.q_tes = cap_var("q_tes", cfg.max_tes_kwh, cfg.fixed_tes_kwh);
  ix.p_bes = cap_var("p_bes", cfg.max_bes_power_kw, cfg.fixed_bes_power_kw);
  ix.c_bes = cap_var("c_bes", cfg.max_bes_kwh, cfg.fixed_bes_kwh);

  // Availability fractions and cuts per step.
  std::vector<double> avail_base, avail_tes;
  std::vector<CutSet> cuts_base, cuts_tes;
  avail_base.resize(std::size_t(K));
  avail_tes.resize(std::size_t(K));
  cuts_base.resize(std::size_t(K));
  cuts_tes.resize(std::size_t(K));
  ChillerSpec base_at_max = tpl.base_chiller;
  base_at_max.capacity_kw = cfg.max_chiller_kw;
  ChillerSpec tesch_at_max = tpl.tes_chiller;
  tesch_at_max.capacity_kw = cfg.max_tes_chiller_kw;
  for (int t = 0; t < K; ++t) {
    const std::size_t ts = std::size_t(t);
    const CurveValues vb = eval_curves(tpl.base_chiller.curves, in.op_base[ts], 0.0);
    const CurveValues vt = eval_curves(tpl.tes_chiller.curves, in.op_tes[ts], 0.0);
    if (!(vb.psi1 > 0) || !(vt.psi1 > 0))
      throw CurveEvalError("cap_ft", "capacity fraction must stay positive");
    avail_base[ts] = vb.psi1 * tpl.base_chiller.plr_max;
    avail_tes[ts] = vt.psi1 * tpl.tes_chiller.plr_max;
    cuts_base[ts] = build_off_capable_plr_cuts(tpl.base_chiller, in.op_base[ts], cfg.cut_count);
    cuts_tes[ts] = build_off_capable_plr_cuts(tpl.tes_chiller, in.op_tes[ts], cfg.cut_count);
  }

  for (int t = 0; t < K; ++t) {
    const std::size_t ts = std::size_t(t);
    const double pb_ub = detail::power_upper_bound(base_at_max, in.op_base[ts]);
    const double pt_ub = detail::power_upper_bound(tesch_at_max, in.op_tes[ts]);
    ix.q_ch.push_back(
        lp.add_variable("", 0.0, cfg.max_tes_chiller_kw * std::max(1.0, avail_tes[ts])));
    ix.q_dis.push_back(lp.add_variable("", 0.0, in.q_load_kw[ts]));
    ix.e_tes.push_back(lp.add_variable("", 0.0, cfg.max_tes_kwh));
    ix.p_ch.push_back(lp.add_variable("", 0.0, cfg.max_bes_power_kw));
    ix.p_dis.push_back(lp.add_variable("", 0.0, cfg.max_bes_power_kw));
    ix.e_bes.push_back(lp.add_variable("", 0.0, cfg.max_bes_kwh));
    ix.p_base.push_back(lp.add_variable("", 0.0, pb_ub));
    ix.p_tesch.push_back(lp.add_variable("", 0.0, pt_ub));
  }
  std::map<MonthKey, int> peak_var;
  for (int t = 0; t < K; ++t) {
    const MonthKey m = month_of_step[std::size_t(t)];
    if (!peak_var.count(m)) {
      const int v = lp.add_variable("p_peak_" + month_key_to_string(m), 0.0, kInf);
      peak_var[m] = v;
      ix.p_peak.push_back({m, v});
    }
  }

  // Objective: capital plus present-valued annual operating cost.
  lp.add_objective(ix.c_chiller, cfg.alpha_chiller_per_kw);
  lp.add_objective(ix.c_tes_chiller, cfg.alpha_tes_chiller_per_kw);
  lp.add_objective(ix.q_tes, cfg.alpha_tes_per_kwh);
  lp.add_objective(ix.p_bes, cfg.alpha_bes_power_per_kw);
  lp.add_objective(ix.c_bes, cfg.alpha_bes_per_kwh);
  const double opw = out.pwf * out.energy_weight;
  double offset = 0.0;
  for (int t = 0; t < K; ++t) {
    const std::size_t ts = std::size_t(t);
    const double w = opw * in.price_per_kwh[ts] * dt;
    lp.add_objective(ix.p_base[ts], w);
    lp.add_objective(ix.p_tesch[ts], w);
    lp.add_objective(ix.p_ch[ts], w);
    lp.add_objective(ix.p_dis[ts], -w);
    offset += w * in.p_non_kw[ts];
  }
  for (const auto& [m, v] : ix.p_peak) {
    double rate = 0.0;
    if (auto it = in.demand_rate_per_kw.find(m); it != in.demand_rate_per_kw.end())
      rate = it->second;
    lp.add_objective(v, out.pwf * out.demand_weight * rate);
  }
  lp.set_objective_offset(offset);

  // Rows, step-ordered for the crash basis.
  SimplexHint hint;
  hint.var_at_upper.assign(std::size_t(lp.num_variables()), 0);
  hint.var_at_upper[std::size_t(ix.c_chiller)] = 1;
  hint.var_at_upper[std::size_t(ix.c_tes_chiller)] = 1;
  hint.var_at_upper[std::size_t(ix.q_tes)] = 1;
  hint.var_at_upper[std::size_t(ix.p_bes)] = 1;
  hint.var_at_upper[std::size_t(ix.c_bes)] = 1;
  std::vector<int> hint_rows;
  auto add_row = [&](std::vector<std::pair<int, double>> terms, RowSense s,
                     double rhs, int basic = -1) {
    const int r = lp.add_constraint("", std::move(terms), s, rhs);
    hint_rows.push_back(basic);
    return r;
  };

  std::vector<double> crash_total(std::size_t(K), 0.0);
  std::vector<int> peak_row_of_step(std::size_t(K), -1);

  for (int t = 0; t < K; ++t) {
    const std::size_t ts = std::size_t(t);
    const double q_load = in.q_load_kw[ts];

    // Storage energy dynamics (kWh).
    {
      std::vector<std::pair<int, double>> terms{{ix.e_tes[ts], 1.0},
                                                {ix.q_ch[ts], -dt},
                                                {ix.q_dis[ts], dt}};
      double rhs = 0.0;
      if (t == 0)
        terms.push_back({ix.q_tes, -keep * cfg.tes_soc0});
      else
        terms.push_back({ix.e_tes[ts - 1], -keep});
      add_row(std::move(terms), RowSense::kEq, rhs, ix.e_tes[ts]);
    }
    {
      std::vector<std::pair<int, double>> terms{
          {ix.e_bes[ts], 1.0},
          {ix.p_ch[ts], -bes.eta_charge * dt},
          {ix.p_dis[ts], dt / bes.eta_discharge}};
      double rhs = 0.0;
      if (t == 0)
        terms.push_back({ix.c_bes, -cfg.bes_soc0});
      else
        terms.push_back({ix.e_bes[ts - 1], -1.0});
      add_row(std::move(terms), RowSense::kEq, rhs, ix.e_bes[ts]);
    }

    // TES headroom / availability against beginning-of-step energy.
    {
      std::vector<std::pair<int, double>> terms{{ix.q_ch[ts], dt},
                                                {ix.q_tes, -tes.soc_max}};
      if (t == 0)
        terms[1].second += keep * cfg.tes_soc0;
      else
        terms.push_back({ix.e_tes[ts - 1], keep});
      add_row(std::move(terms), RowSense::kLe, 0.0);
    }
    {
      std::vector<std::pair<int, double>> terms{{ix.q_dis[ts], dt},
                                                {ix.q_tes, tes.soc_min}};
      if (t == 0)
        terms[1].second -= keep * cfg.tes_soc0;
      else
        terms.push_back({ix.e_tes[ts - 1], -keep});
      add_row(std::move(terms), RowSense::kLe, 0.0);
    }
    if (tes.standby_loss_per_step > 0) {
      // With standby losses the headroom rows no longer imply the energy
      // box, so state bounds are kept explicitly.
      add_row({{ix.e_tes[ts], 1.0}, {ix.q_tes, -tes.soc_max}}, RowSense::kLe, 0.0);
      add_row({{ix.e_tes[ts], -1.0}, {ix.q_tes, tes.soc_min}}, RowSense::kLe, 0.0);
    }

    // Charging chiller capacity and optional C-rates.
    add_row({{ix.q_ch[ts], 1.0}, {ix.c_tes_chiller, -avail_tes[ts]}},
            RowSense::kLe, 0.0);
    if (cfg.tes_c_rate_charge > 0)
      add_row({{ix.q_ch[ts], 1.0}, {ix.q_tes, -cfg.tes_c_rate_charge}},
              RowSense::kLe, 0.0);
    if (cfg.tes_c_rate_discharge > 0)
      add_row({{ix.q_dis[ts], 1.0}, {ix.q_tes, -cfg.tes_c_rate_discharge}},
              RowSense::kLe, 0.0);

    // BES state and power boxes against the sized capacities.
    add_row({{ix.e_bes[ts], 1.0}, {ix.c_bes, -bes.soc_max}}, RowSense::kLe, 0.0);
    add_row({{ix.e_bes[ts], -1.0}, {ix.c_bes, bes.soc_min}}, RowSense::kLe, 0.0);
    add_row({{ix.p_ch[ts], 1.0}, {ix.p_bes, -1.0}}, RowSense::kLe, 0.0);
    add_row({{ix.p_dis[ts], 1.0}, {ix.p_bes, -1.0}}, RowSense::kLe, 0.0);

    // Cooling adequacy.
    add_row({{ix.q_dis[ts], 1.0}, {ix.c_chiller, avail_base[ts]}},
            RowSense::kGe, q_load);

    // Chiller power epigraphs (capacity-coupled).
    {
      const auto& cs = cuts_base[ts];
      int best = 0;
      double bestv = -kInf;
      for (std::size_t c = 0; c < cs.cuts.size(); ++c) {
        const double v = cs.cuts[c].value(cfg.max_chiller_kw, q_load);
        if (v > bestv) {
          bestv = v;
          best = int(c);
        }
      }
      crash_total[ts] = in.p_non_kw[ts] + std::max(0.0, bestv);
      for (std::size_t c = 0; c < cs.cuts.size(); ++c) {
        const auto& cut = cs.cuts[c];
        add_row({{ix.p_base[ts], 1.0},
                 {ix.q_dis[ts], cut.coef_load},
                 {ix.c_chiller, -cut.coef_capacity}},
                RowSense::kGe, cut.coef_load * q_load + cut.constant,
                int(c) == best && bestv >= 0.0 ? ix.p_base[ts] : -1);
      }
    }
    {
      const auto& cs = cuts_tes[ts];
      int best = 0;
      double bestv = -kInf;
      for (std::size_t c = 0; c < cs.cuts.size(); ++c) {
        const double v = cs.cuts[c].value(cfg.max_tes_chiller_kw, 0.0);
        if (v > bestv) {
          bestv = v;
          best = int(c);
        }
      }
      crash_total[ts] += std::max(0.0, bestv);
      for (std::size_t c = 0; c < cs.cuts.size(); ++c) {
        const auto& cut = cs.cuts[c];
        add_row({{ix.p_tesch[ts], 1.0},
                 {ix.q_ch[ts], -cut.coef_load},
                 {ix.c_tes_chiller, -cut.coef_capacity}},
                RowSense::kGe, cut.constant,
                int(c) == best && bestv >= 0.0 ? ix.p_tesch[ts] : -1);
      }
    }

    // No grid export: discharge may at most zero the building draw.
    add_row({{ix.p_base[ts], 1.0},
             {ix.p_tesch[ts], 1.0},
             {ix.p_ch[ts], 1.0},
             {ix.p_dis[ts], -1.0}},
            RowSense::kGe, -in.p_non_kw[ts]);

    // Peak definition.
    peak_row_of_step[ts] = add_row({{peak_var[month_of_step[ts]], 1.0},
                                    {ix.p_base[ts], -1.0},
                                    {ix.p_tesch[ts], -1.0},
                                    {ix.p_ch[ts], -1.0},
                                    {ix.p_dis[ts], 1.0}},
                                   RowSense::kGe, in.p_non_kw[ts]);
  }

  // Year-level rows: final state box, cyclic boundary, floor space.
  add_row({{ix.e_tes[std::size_t(K - 1)], 1.0}, {ix.q_tes, -tes.soc_max}},
          RowSense::kLe, 0.0);
  add_row({{ix.e_tes[std::size_t(K - 1)], 1.0}, {ix.q_tes, -cfg.tes_soc0}},
          RowSense::kGe, 0.0);
  add_row({{ix.e_bes[std::size_t(K - 1)], 1.0}, {ix.c_bes, -cfg.bes_soc0}},
          RowSense::kGe, 0.0);
  if (cfg.space) {
    add_row({{ix.q_tes, 1.0 / cfg.space->tes_kwh_per_m2},
             {ix.c_bes, 1.0 / cfg.space->bes_kwh_per_m2}},
            RowSense::kLe, cfg.space->max_m2);
  }

  // Peak variables pivot into their month's crash-time maximum row.
  std::map<MonthKey, std::pair<int, double>> month_max;
  for (int t = 0; t < K; ++t) {
    const MonthKey m = month_of_step[std::size_t(t)];
    auto [it, fresh] = month_max.try_emplace(m, t, crash_total[std::size_t(t)]);
    if (!fresh && crash_total[std::size_t(t)] > it->second.second + 1e-12)
      it->second = {t, crash_total[std::size_t(t)]};
  }
  for (const auto& [m, sv] : month_max)
    hint_rows[std::size_t(peak_row_of_step[std::size_t(sv.first)])] = peak_var[m];
  hint.basic_var_per_row = std::move(hint_rows);
  lp.set_hint(std::move(hint));

  return out;
}

/// Solves the joint sizing problem; the result's capacities feed dispatch
/// unchanged. Non-optimal solver outcomes are reported in the status field.
inline SizingResult solve_sizing(const SizingConfig& cfg, const AssetFleet& tpl,
                                 const HorizonInputs& year,
                                 const SimplexOptions& sopt = {}) {
  SizingProblem sp = build_sizing_problem(cfg, tpl, year);
  const LpSolution sol = solve_lp(sp.lp, sopt);
  SizingResult r;
  r.status = sol.status;
  r.iterations = sol.iterations;
  r.pwf = sp.pwf;
  if (sol.status != SolveStatus::kOptimal) return r;
  r.c_chiller_kw = sol.value(sp.idx.c_chiller);
  r.c_tes_chiller_kw = sol.value(sp.idx.c_tes_chiller);
  r.q_tes_kwh = sol.value(sp.idx.q_tes);
  r.p_bes_kw = sol.value(sp.idx.p_bes);
  r.c_bes_kwh = sol.value(sp.idx.c_bes);
  r.storage_capital = cfg.alpha_tes_chiller_per_kw * r.c_tes_chiller_kw +
                      cfg.alpha_tes_per_kwh * r.q_tes_kwh +
                      cfg.alpha_bes_power_per_kw * r.p_bes_kw +
                      cfg.alpha_bes_per_kwh * r.c_bes_kwh;
  r.capital = cfg.alpha_chiller_per_kw * r.c_chiller_kw + r.storage_capital;
  // Everything past the capital terms in the objective is PWF x annual cost.
  r.operating_present_value = sol.objective - r.capital;
  r.annual_operating = r.pwf > 0 ? r.operating_present_value / r.pwf : 0.0;
  r.total_present_value = r.capital + r.operating_present_value;
  return r;
}

/// Applies a SizingResult onto an asset fleet template.
inline AssetFleet apply_sizing(const AssetFleet& tpl, const SizingResult& r) {
  AssetFleet f = tpl;
  f.base_chiller.capacity_kw = r.c_chiller_kw;
  f.tes_chiller.capacity_kw = r.c_tes_chiller_kw;
  f.tes.capacity_kwh = r.q_tes_kwh;
  f.bes.power_max_kw = r.p_bes_kw;
  f.bes.capacity_kwh = r.c_bes_kwh;
  return f;
}

/// Catalog of commercially available sizes per asset.
struct SizeCatalog {
  std::vector<double> chiller_kw, tes_chiller_kw, tes_kwh, bes_power_kw,
      bes_kwh;
};

namespace detail {
inline std::vector<double> catalog_neighbors(std::vector<double> catalog,
                                             double v, const char* what) {
  if (catalog.empty())
    throw InputError(std::string("empty size catalog for ") + what);
  std::sort(catalog.begin(), catalog.end());
  double lo = catalog.front(), hi = catalog.back();
  bool has_lo = false, has_hi = false;
  for (double c : catalog) {
    if (c <= v + 1e-9 && (!has_lo || c > lo)) { lo = c; has_lo = true; }
    if (c >= v - 1e-9 && (!has_hi || c < hi)) { hi = c; has_hi = true; }
  }
  std::vector<double> out;
  if (has_lo) out.push_back(lo);
  if (has_hi && (!has_lo || hi != lo)) out.push_back(hi);
  if (out.empty()) out.push_back(catalog.front());
  return out;
}
}  // namespace detail

/// Explores the catalog sizes bracketing the continuous optimum (floor and
/// ceiling per asset, at most 32 combinations), re-evaluates the year
/// dispatch cost with capacities pinned, and returns the cheapest feasible
/// combination. Throws when no combination is feasible, listing what failed.
inline SizingResult commercial_rounding(const SizingConfig& cfg,
                                        const AssetFleet& tpl,
                                        const HorizonInputs& year,
                                        const SizingResult& optimum,
                                        const SizeCatalog& catalog,
                                        const SimplexOptions& sopt = {}) {
  const auto cands_chiller = detail::catalog_neighbors(
      catalog.chiller_kw, optimum.c_chiller_kw, "chiller");
  const auto cands_tesch = detail::catalog_neighbors(
      catalog.tes_chiller_kw, optimum.c_tes_chiller_kw, "tes chiller");
  const auto cands_tes =
      detail::catalog_neighbors(catalog.tes_kwh, optimum.q_tes_kwh, "tes");
  const auto cands_pbes = detail::catalog_neighbors(
      catalog.bes_power_kw, optimum.p_bes_kw, "bes power");
  const auto cands_bes =
      detail::catalog_neighbors(catalog.bes_kwh, optimum.c_bes_kwh, "bes");

  SizingResult best;
  bool have = false;
  std::vector<std::string> failures;
  for (double cc : cands_chiller)
    for (double ct : cands_tesch)
      for (double qt : cands_tes)
        for (double pb : cands_pbes)
          for (double cb : cands_bes) {
            SizingConfig pinned = cfg;
            pinned.fixed_chiller_kw = cc;
            pinned.fixed_tes_chiller_kw = ct;
            pinned.fixed_tes_kwh = qt;
            pinned.fixed_bes_power_kw = pb;
            pinned.fixed_bes_kwh = cb;
            if (cfg.space) {
              const double used =
                  qt / cfg.space->tes_kwh_per_m2 + cb / cfg.space->bes_kwh_per_m2;
              if (used > cfg.space->max_m2 + 1e-9) {
                failures.push_back("combination exceeds floor space");
                continue;
              }
            }
            SizingResult r;
            try {
              r = solve_sizing(pinned, tpl, year, sopt);
            } catch (const Error& e) {
              failures.push_back(e.what());
              continue;
            }
            if (r.status != SolveStatus::kOptimal) {
              failures.push_back("combination infeasible: chiller " +
                                 std::to_string(cc) + " kW, tes " +
                                 std::to_string(qt) + " kWh");
              continue;
            }
            if (!have || r.total_present_value <
                             best.total_present_value - 1e-9) {
              best = r;
              have = true;
            }
          }
  if (!have) {
    std::string msg = "no feasible catalog combination;";
    for (const auto& f : failures) msg += " " + f + ";";
    throw InfeasibleProblemError(msg);
  }
  return best;
}

}  // namespace storplan

#endif  // STORPLAN_SIZING_HPP
