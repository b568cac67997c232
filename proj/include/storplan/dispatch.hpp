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

#ifndef STORPLAN_DISPATCH_HPP
#define STORPLAN_DISPATCH_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "storplan/assets.hpp"
#include "storplan/calendar.hpp"
#include "storplan/chiller_cuts.hpp"
#include "storplan/lp.hpp"

namespace storplan {

/// Everything the horizon optimizer needs to know about the next K steps:
/// forecasts, prices, the current storage states, and the demand-charge
/// bookkeeping (rate and already-realized peak) for every month the horizon
/// touches.
struct HorizonInputs {
  Timestamp start = 0;
  double dt_h = 1.0;
  int steps = 0;
  std::vector<double> q_load_kw;
  std::vector<double> p_non_kw;
  std::vector<double> price_per_kwh;
  std::vector<OperatingPoint> op_base;
  std::vector<OperatingPoint> op_tes;
  double tes_soc0 = 0.5;
  double bes_soc0 = 0.5;
  std::map<MonthKey, double> demand_rate_per_kw;
  std::map<MonthKey, double> incumbent_peak_kw;
  double terminal_value_tes_per_kwh = 0.0;
  double terminal_value_bes_per_kwh = 0.0;

  void validate() const {
    if (steps <= 0) throw InputError("horizon needs at least one step");
    if (dt_h <= 0) throw InputError("horizon dt must be > 0");
    const auto n = std::size_t(steps);
    if (q_load_kw.size() != n || p_non_kw.size() != n ||
        price_per_kwh.size() != n || op_base.size() != n || op_tes.size() != n)
      throw InputError("horizon series lengths must equal the step count");
    for (const auto& [m, peak] : incumbent_peak_kw)
      if (peak < 0) throw InputError("incumbent peak must be >= 0");
  }

  MonthKey month_at(int t) const {
    return month_key(start + Timestamp(t) * Timestamp(dt_h * 3600.0 + 0.5));
  }
};

/// The first control move the horizon solution prescribes. TES flows are
/// netted (charge and discharge never co-applied); q_base_kw is the load
/// share the base chiller is left to serve.
struct ControlAction {
  double q_ch_kw = 0.0;
  double q_dis_kw = 0.0;
  double p_bes_ch_kw = 0.0;
  double p_bes_dis_kw = 0.0;
  double q_base_kw = 0.0;
};

struct DispatchOptions {
  int cut_count = 8;           // tangent planes per chiller per step
  bool milp_commitment = false;  // enable min-PLR on/off binaries
  bool attach_hint = true;       // give the solver a crash basis
  bool debug_names = false;      // name LP rows/columns (slower builds)
};

/// Column bookkeeping for one dispatch LP. Entries are per step except the
/// per-month peak variables.
struct DispatchVarIndex {
  std::vector<int> q_ch, q_dis, l_tes, p_ch, p_dis, k_bes, p_base, p_tesch;
  std::vector<std::pair<MonthKey, int>> p_peak;
  std::vector<int> u_base, u_tes;  // commitment binaries; empty in LP mode

  int peak_var(MonthKey m) const {
    for (const auto& [k, v] : p_peak)
      if (k == m) return v;
    return -1;
  }
};

struct DispatchProblem {
  LpProblem lp;
  DispatchVarIndex idx;
  std::vector<MonthKey> month_of_step;
  std::vector<double> qa_base_kw;  // deliverable base cooling per step
  std::vector<double> qa_tes_kw;   // deliverable charging per step
  double dt_h = 1.0;
};

namespace detail {

inline double deliverable_cooling(const ChillerSpec& spec,
                                  const OperatingPoint& op) {
  if (spec.capacity_kw <= 0) return 0.0;
  return chiller_available_capacity(spec, op) * spec.plr_max;
}

inline double power_upper_bound(const ChillerSpec& spec,
                                const OperatingPoint& op) {
  if (spec.capacity_kw <= 0) return 0.0;
  const CurveValues v = eval_curves(spec.curves, op, spec.plr_max);
  const double qa = spec.capacity_kw * v.psi1;
  return std::max(0.0, qa / spec.cop_ref * v.psi2 * v.psi3) + 1.0;
}

}  // namespace detail

/// Builds the K-step dispatch LP (or MILP in commitment mode) for fixed
/// asset capacities. Variables per step: TES charge/discharge, TES SOC,
/// BES charge/discharge, BES SOC, and the two chiller electric powers;
/// plus one peak variable per month touched — 8K+1 for a single-month
/// horizon. Battery net power and the total building draw are affine in
/// these and are reconstructed rather than carried as columns.
inline DispatchProblem build_dispatch_problem(const HorizonInputs& in,
                                              const AssetFleet& fleet,
                                              const DispatchOptions& opt = {}) {
  in.validate();
  fleet.validate();
  const int K = in.steps;
  const double dt = in.dt_h;
  const TesSpec& tes = fleet.tes;
  const BesSpec& bes = fleet.bes;
  const double loss = tes.standby_loss_per_step;
  const double keep = 1.0 - loss;

  DispatchProblem out;
  out.dt_h = dt;
  out.month_of_step.resize(std::size_t(K));
  out.qa_base_kw.resize(std::size_t(K));
  out.qa_tes_kw.resize(std::size_t(K));

  std::vector<CutSet> base_cuts, tes_cuts;
  base_cuts.resize(std::size_t(K));
  tes_cuts.resize(std::size_t(K));
  for (int t = 0; t < K; ++t) {
    out.month_of_step[std::size_t(t)] = in.month_at(t);
    out.qa_base_kw[std::size_t(t)] =
        detail::deliverable_cooling(fleet.base_chiller, in.op_base[std::size_t(t)]);
    out.qa_tes_kw[std::size_t(t)] =
        detail::deliverable_cooling(fleet.tes_chiller, in.op_tes[std::size_t(t)]);
    if (fleet.base_chiller.capacity_kw > 0)
      base_cuts[std::size_t(t)] = build_off_capable_plr_cuts(
          fleet.base_chiller, in.op_base[std::size_t(t)], opt.cut_count);
    if (fleet.tes_chiller.capacity_kw > 0)
      tes_cuts[std::size_t(t)] = build_off_capable_plr_cuts(
          fleet.tes_chiller, in.op_tes[std::size_t(t)], opt.cut_count);
  }

  // Pre-flight: every step must be coverable by base chiller plus the best
  // case TES discharge.
  const double tes_span_kw =
      tes.capacity_kwh > 0
          ? std::min((tes.soc_max - tes.soc_min) * tes.capacity_kwh / dt,
                     tes.max_discharge_kw.max_on(tes.soc_min, tes.soc_max))
          : 0.0;
  for (int t = 0; t < K; ++t) {
    const double best_possible =
        out.qa_base_kw[std::size_t(t)] + tes_span_kw;
    if (in.q_load_kw[std::size_t(t)] > best_possible + 1e-6) {
      throw InfeasibleProblemError(
          "cooling demand " + std::to_string(in.q_load_kw[std::size_t(t)]) +
              " kW at step " + std::to_string(t) +
              " exceeds base chiller plus best-case TES discharge (" +
              std::to_string(best_possible) + " kW)",
          t);
    }
  }

  LpProblem& lp = out.lp;
  DispatchVarIndex& ix = out.idx;
  auto name = [&](const char* tag, int t) {
    return opt.debug_names ? std::string(tag) + "[" + std::to_string(t) + "]"
                           : std::string();
  };

  const bool has_tes = tes.capacity_kwh > 0;
  const bool has_bes = bes.capacity_kwh > 0;
  const bool commit_base =
      opt.milp_commitment && fleet.base_chiller.min_plr > 0;
  const bool commit_tes = opt.milp_commitment && fleet.tes_chiller.min_plr > 0;

  // --- columns -------------------------------------------------------------
  for (int t = 0; t < K; ++t) {
    const double q_load = in.q_load_kw[std::size_t(t)];
    const double qa_b = out.qa_base_kw[std::size_t(t)];
    const double qa_t = out.qa_tes_kw[std::size_t(t)];

    double qch_ub = has_tes ? qa_t : 0.0;
    if (has_tes && tes.max_charge_kw.is_constant())
      qch_ub = std::min(qch_ub, tes.max_charge_kw(0.0));
    double qdis_ub = has_tes ? q_load : 0.0;
    if (has_tes && tes.max_discharge_kw.is_constant())
      qdis_ub = std::min(qdis_ub, tes.max_discharge_kw(0.0));
    if (t == 0 && has_tes) {
      // Beginning-of-step SOC is known here, so the SOC-coupled limits fold
      // into plain bounds.
      const double kept0 = keep * in.tes_soc0;
      qch_ub = std::min({qch_ub,
                         std::max(0.0, (tes.soc_max - kept0) * tes.capacity_kwh / dt),
                         tes.max_charge_kw(in.tes_soc0)});
      qdis_ub = std::min({qdis_ub,
                          std::max(0.0, (kept0 - tes.soc_min) * tes.capacity_kwh / dt),
                          tes.max_discharge_kw(in.tes_soc0)});
    }
    double qdis_lb = commit_base ? 0.0 : std::max(0.0, q_load - qa_b);
    if (qdis_lb > qdis_ub + 1e-9) {
      throw InfeasibleProblemError(
          "step " + std::to_string(t) + ": base chiller shortfall " +
              std::to_string(qdis_lb) + " kW exceeds TES discharge limit " +
              std::to_string(qdis_ub) + " kW",
          t);
    }
    qdis_lb = std::min(qdis_lb, qdis_ub);

    ix.q_ch.push_back(lp.add_variable(name("q_ch", t), 0.0, std::max(0.0, qch_ub)));
    ix.q_dis.push_back(lp.add_variable(name("q_dis", t), qdis_lb, std::max(qdis_lb, qdis_ub)));
    ix.l_tes.push_back(
        has_tes ? lp.add_variable(name("l_tes", t), tes.soc_min, tes.soc_max)
                : lp.add_variable(name("l_tes", t), in.tes_soc0, in.tes_soc0));
    ix.p_ch.push_back(lp.add_variable(name("p_bes_ch", t), 0.0,
                                      has_bes ? bes.power_max_kw : 0.0));
    ix.p_dis.push_back(lp.add_variable(name("p_bes_dis", t), 0.0,
                                       has_bes ? bes.power_max_kw : 0.0));
    ix.k_bes.push_back(
        has_bes ? lp.add_variable(name("k_bes", t), bes.soc_min, bes.soc_max)
                : lp.add_variable(name("k_bes", t), in.bes_soc0, in.bes_soc0));
    ix.p_base.push_back(lp.add_variable(
        name("p_base", t), 0.0,
        detail::power_upper_bound(fleet.base_chiller, in.op_base[std::size_t(t)])));
    ix.p_tesch.push_back(lp.add_variable(
        name("p_tesch", t), 0.0,
        detail::power_upper_bound(fleet.tes_chiller, in.op_tes[std::size_t(t)])));
  }
  for (int t = 0; t < K && (commit_base || commit_tes); ++t) {
    ix.u_base.push_back(commit_base
                            ? lp.add_variable(name("u_base", t), 0.0, 1.0, true)
                            : -1);
    ix.u_tes.push_back(commit_tes
                           ? lp.add_variable(name("u_tes", t), 0.0, 1.0, true)
                           : -1);
  }
  std::map<MonthKey, int> peak_var;
  for (int t = 0; t < K; ++t) {
    const MonthKey m = out.month_of_step[std::size_t(t)];
    if (!peak_var.count(m)) {
      double incumbent = 0.0;
      if (auto it = in.incumbent_peak_kw.find(m); it != in.incumbent_peak_kw.end())
        incumbent = it->second;
      const int v = lp.add_variable(
          opt.debug_names ? "p_peak[" + month_key_to_string(m) + "]" : "",
          incumbent, kInf);
      peak_var[m] = v;
      ix.p_peak.push_back({m, v});
    }
  }

  // --- objective -----------------------------------------------------------
  double offset = 0.0;
  for (int t = 0; t < K; ++t) {
    const double w = in.price_per_kwh[std::size_t(t)] * dt;
    lp.add_objective(ix.p_base[std::size_t(t)], w);
    lp.add_objective(ix.p_tesch[std::size_t(t)], w);
    lp.add_objective(ix.p_ch[std::size_t(t)], w);
    lp.add_objective(ix.p_dis[std::size_t(t)], -w);
    offset += w * in.p_non_kw[std::size_t(t)];
  }
  for (const auto& [m, v] : ix.p_peak) {
    double rate = 0.0;
    if (auto it = in.demand_rate_per_kw.find(m); it != in.demand_rate_per_kw.end())
      rate = it->second;
    lp.add_objective(v, rate);
  }
  if (has_tes && in.terminal_value_tes_per_kwh != 0.0)
    lp.add_objective(ix.l_tes[std::size_t(K - 1)],
                     -in.terminal_value_tes_per_kwh * tes.capacity_kwh);
  if (has_bes && in.terminal_value_bes_per_kwh != 0.0)
    lp.add_objective(ix.k_bes[std::size_t(K - 1)],
                     -in.terminal_value_bes_per_kwh * bes.capacity_kwh);
  lp.set_objective_offset(offset);

  // --- rows (step-ordered so the crash basis eliminates triangularly) ------
  SimplexHint hint;
  hint.var_at_upper.assign(std::size_t(lp.num_variables()), 0);
  std::vector<int> hint_rows;   // row -> basic var, aligned with rows below
  auto add_row = [&](std::string n, std::vector<std::pair<int, double>> terms,
                     RowSense s, double rhs, int basic = -1) {
    const int r = lp.add_constraint(std::move(n), std::move(terms), s, rhs);
    hint_rows.push_back(basic);
    return r;
  };

  // Crash-time powers, used to pick which cut row each power pivots into
  // and where the peak variable sits.
  std::vector<double> crash_total(std::size_t(K), 0.0);
  std::vector<int> peak_row_of_step(std::size_t(K), -1);

  for (int t = 0; t < K; ++t) {
    const double q_load = in.q_load_kw[std::size_t(t)];
    const std::size_t ts = std::size_t(t);

    // Storage dynamics.
    if (has_tes) {
      std::vector<std::pair<int, double>> terms{
          {ix.l_tes[ts], 1.0},
          {ix.q_ch[ts], -dt / tes.capacity_kwh},
          {ix.q_dis[ts], dt / tes.capacity_kwh}};
      double rhs = 0.0;
      if (t == 0)
        rhs = keep * in.tes_soc0;
      else
        terms.push_back({ix.l_tes[ts - 1], -keep});
      add_row(name("tes_dyn", t), std::move(terms), RowSense::kEq, rhs,
              ix.l_tes[ts]);
    } else {
      add_row(name("tes_dyn", t),
              t == 0 ? std::vector<std::pair<int, double>>{{ix.l_tes[ts], 1.0}}
                     : std::vector<std::pair<int, double>>{
                           {ix.l_tes[ts], 1.0}, {ix.l_tes[ts - 1], -1.0}},
              RowSense::kEq, t == 0 ? in.tes_soc0 : 0.0, ix.l_tes[ts]);
    }
    if (has_bes) {
      std::vector<std::pair<int, double>> terms{
          {ix.k_bes[ts], 1.0},
          {ix.p_ch[ts], -bes.eta_charge * dt / bes.capacity_kwh},
          {ix.p_dis[ts], dt / (bes.eta_discharge * bes.capacity_kwh)}};
      double rhs = 0.0;
      if (t == 0)
        rhs = in.bes_soc0;
      else
        terms.push_back({ix.k_bes[ts - 1], -1.0});
      add_row(name("bes_dyn", t), std::move(terms), RowSense::kEq, rhs,
              ix.k_bes[ts]);
    } else {
      add_row(name("bes_dyn", t),
              t == 0 ? std::vector<std::pair<int, double>>{{ix.k_bes[ts], 1.0}}
                     : std::vector<std::pair<int, double>>{
                           {ix.k_bes[ts], 1.0}, {ix.k_bes[ts - 1], -1.0}},
              RowSense::kEq, t == 0 ? in.bes_soc0 : 0.0, ix.k_bes[ts]);
    }

    // Rate and headroom limits against the beginning-of-step SOC.
    if (has_tes && t >= 1) {
      add_row(name("tes_room_ch", t),
              {{ix.q_ch[ts], dt / tes.capacity_kwh},
               {ix.l_tes[ts - 1], keep}},
              RowSense::kLe, tes.soc_max);
      add_row(name("tes_room_dis", t),
              {{ix.q_dis[ts], dt / tes.capacity_kwh},
               {ix.l_tes[ts - 1], -keep}},
              RowSense::kLe, -tes.soc_min);
      if (!tes.max_charge_kw.is_constant()) {
        for (const auto& line : tes.max_charge_kw.envelope_lines())
          add_row(name("tes_rate_ch", t),
                  {{ix.q_ch[ts], 1.0}, {ix.l_tes[ts - 1], -line.slope}},
                  RowSense::kLe, line.intercept);
      }
      if (!tes.max_discharge_kw.is_constant()) {
        for (const auto& line : tes.max_discharge_kw.envelope_lines())
          add_row(name("tes_rate_dis", t),
                  {{ix.q_dis[ts], 1.0}, {ix.l_tes[ts - 1], -line.slope}},
                  RowSense::kLe, line.intercept);
      }
    }

    // Commitment coupling (MILP mode only).
    if (commit_base) {
      const double qa_b = out.qa_base_kw[ts];
      add_row(name("base_on_cover", t),
              {{ix.q_dis[ts], 1.0}, {ix.u_base[ts], qa_b}}, RowSense::kGe,
              q_load);
      add_row(name("base_min_plr", t),
              {{ix.q_dis[ts], 1.0},
               {ix.u_base[ts], fleet.base_chiller.min_plr *
                                   out.qa_base_kw[ts] /
                                   fleet.base_chiller.plr_max}},
              RowSense::kLe, q_load);
    }
    if (commit_tes) {
      const double qa_t = out.qa_tes_kw[ts];
      add_row(name("tes_on_cap", t),
              {{ix.q_ch[ts], 1.0}, {ix.u_tes[ts], -qa_t}}, RowSense::kLe, 0.0);
      add_row(name("tes_min_plr", t),
              {{ix.q_ch[ts], 1.0},
               {ix.u_tes[ts], -fleet.tes_chiller.min_plr * qa_t /
                                  fleet.tes_chiller.plr_max}},
              RowSense::kGe, 0.0);
    }

    // Chiller power epigraphs.
    const double crash_qbase =
        std::max(0.0, q_load - lp.variable(ix.q_dis[ts]).lower);
    double crash_pbase = 0.0, crash_ptesch = 0.0;
    if (fleet.base_chiller.capacity_kw > 0) {
      const auto& cs = base_cuts[ts];
      int best = 0;
      double bestv = -kInf;
      for (std::size_t c = 0; c < cs.cuts.size(); ++c) {
        const double v = cs.cuts[c].value(fleet.base_chiller.capacity_kw,
                                          q_load - lp.variable(ix.q_dis[ts]).lower);
        if (v > bestv) {
          bestv = v;
          best = int(c);
        }
      }
      crash_pbase = std::max(0.0, bestv);
      for (std::size_t c = 0; c < cs.cuts.size(); ++c) {
        const auto& cut = cs.cuts[c];
        std::vector<std::pair<int, double>> terms{{ix.p_base[ts], 1.0},
                                                  {ix.q_dis[ts], cut.coef_load}};
        double rhs = cut.coef_capacity * fleet.base_chiller.capacity_kw +
                     cut.coef_load * q_load + cut.constant;
        if (commit_base) {
          terms.push_back({ix.u_base[ts],
                           -(cut.coef_capacity * fleet.base_chiller.capacity_kw +
                             cut.constant)});
          rhs = cut.coef_load * q_load;
        }
        add_row(name("base_cut", t), std::move(terms), RowSense::kGe, rhs,
                (!commit_base && int(c) == best && bestv >= 0.0)
                    ? ix.p_base[ts]
                    : -1);
      }
    }
    if (fleet.tes_chiller.capacity_kw > 0) {
      const auto& cs = tes_cuts[ts];
      int best = 0;
      double bestv = -kInf;
      for (std::size_t c = 0; c < cs.cuts.size(); ++c) {
        const double v = cs.cuts[c].value(fleet.tes_chiller.capacity_kw, 0.0);
        if (v > bestv) {
          bestv = v;
          best = int(c);
        }
      }
      crash_ptesch = std::max(0.0, bestv);
      for (std::size_t c = 0; c < cs.cuts.size(); ++c) {
        const auto& cut = cs.cuts[c];
        std::vector<std::pair<int, double>> terms{
            {ix.p_tesch[ts], 1.0}, {ix.q_ch[ts], -cut.coef_load}};
        double rhs = cut.coef_capacity * fleet.tes_chiller.capacity_kw +
                     cut.constant;
        if (commit_tes) {
          terms.push_back({ix.u_tes[ts], -rhs});
          rhs = 0.0;
        }
        add_row(name("tes_cut", t), std::move(terms), RowSense::kGe, rhs,
                (!commit_tes && int(c) == best && bestv >= 0.0)
                    ? ix.p_tesch[ts]
                    : -1);
      }
    }
    crash_total[ts] = in.p_non_kw[ts] + crash_pbase + crash_ptesch;

    // No grid export: discharge may at most zero the building draw.
    add_row(name("no_export", t),
            {{ix.p_base[ts], 1.0},
             {ix.p_tesch[ts], 1.0},
             {ix.p_ch[ts], 1.0},
             {ix.p_dis[ts], -1.0}},
            RowSense::kGe, -in.p_non_kw[ts]);

    // Peak definition.
    peak_row_of_step[ts] = add_row(name("peak_def", t),
                                   {{peak_var[out.month_of_step[ts]], 1.0},
                                    {ix.p_base[ts], -1.0},
                                    {ix.p_tesch[ts], -1.0},
                                    {ix.p_ch[ts], -1.0},
                                    {ix.p_dis[ts], 1.0}},
                                   RowSense::kGe, in.p_non_kw[ts]);
  }

  // Peak variables pivot into the row of their month's crash-time maximum,
  // unless the incumbent already dominates.
  if (!opt.milp_commitment && opt.attach_hint) {
    std::map<MonthKey, std::pair<int, double>> month_max;  // step, value
    for (int t = 0; t < K; ++t) {
      const MonthKey m = out.month_of_step[std::size_t(t)];
      auto [it, fresh] =
          month_max.try_emplace(m, t, crash_total[std::size_t(t)]);
      if (!fresh && crash_total[std::size_t(t)] > it->second.second + 1e-12)
        it->second = {t, crash_total[std::size_t(t)]};
    }
    for (const auto& [m, sv] : month_max) {
      const double incumbent = lp.variable(peak_var[m]).lower;
      if (sv.second > incumbent)
        hint_rows[std::size_t(peak_row_of_step[std::size_t(sv.first)])] =
            peak_var[m];
    }
    hint.basic_var_per_row = std::move(hint_rows);
    // Nonbasic variables all start at their lower bounds.
    lp.set_hint(std::move(hint));
  }

  return out;
}

namespace detail {
// Magnitudes at the solver's feasibility tolerance are numerical dust, not
// controls; snap them to an exact zero.
inline double denoise_control(double v) { return std::abs(v) < 1e-7 ? 0.0 : v; }
}  // namespace detail

/// Controls for an arbitrary horizon step (used when the control interval
/// spans several model steps). TES flows are netted.
inline ControlAction extract_action_at(const DispatchProblem& dp,
                                       const LpSolution& sol, int t,
                                       double q_load_kw) {
  ControlAction a;
  const double qch = detail::denoise_control(sol.value(dp.idx.q_ch[std::size_t(t)]));
  const double qdis = detail::denoise_control(sol.value(dp.idx.q_dis[std::size_t(t)]));
  const double net = detail::denoise_control(qch - qdis);
  a.q_ch_kw = std::max(0.0, net);
  a.q_dis_kw = std::max(0.0, -net);
  a.p_bes_ch_kw = std::max(
      0.0, detail::denoise_control(sol.value(dp.idx.p_ch[std::size_t(t)])));
  a.p_bes_dis_kw = std::max(
      0.0, detail::denoise_control(sol.value(dp.idx.p_dis[std::size_t(t)])));
  a.q_base_kw = std::max(0.0, q_load_kw - a.q_dis_kw);
  return a;
}

/// First-step controls from a horizon solution.
inline ControlAction extract_first_action(const DispatchProblem& dp,
                                          const LpSolution& sol,
                                          double q_load0_kw) {
  return extract_action_at(dp, sol, 0, q_load0_kw);
}

}  // namespace storplan

#endif  // STORPLAN_DISPATCH_HPP
