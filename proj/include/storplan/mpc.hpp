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

#ifndef STORPLAN_MPC_HPP
#define STORPLAN_MPC_HPP

#include <random>
#include <string>
#include <vector>

#include "storplan/branch_bound.hpp"
#include "storplan/dispatch.hpp"
#include "storplan/plant.hpp"
#include "storplan/profiles.hpp"
#include "storplan/simplex.hpp"
#include "storplan/tariff.hpp"

namespace storplan {

struct TraceStep {
  Timestamp t = 0;
  double q_load_kw = 0, p_non_kw = 0, oat_c = 0;
  double price_per_kwh = 0, demand_rate_per_kw = 0;
  double q_ch_kw = 0, q_dis_kw = 0, tes_soc = 0;
  double p_bes_ch_kw = 0, p_bes_dis_kw = 0, bes_soc = 0;
  double p_base_kw = 0, p_tesch_kw = 0, p_bes_net_kw = 0, p_total_kw = 0;
  double unmet_cooling_kw = 0;
  bool clamped = false;
};

/// Realized closed-loop history plus its billing decomposition.
struct DispatchTrace {
  Timestamp start = 0;
  double dt_h = 1.0;
  std::vector<TraceStep> steps;
  BillingResult bill;
  std::vector<std::string> mismatch_events;
  double unmet_cooling_kwh = 0.0;
  long lp_iterations = 0;
  int solves = 0;

  std::vector<double> p_total_series() const {
    std::vector<double> v;
    v.reserve(steps.size());
    for (const auto& s : steps) v.push_back(s.p_total_kw);
    return v;
  }
  double tes_throughput_kwh() const {
    double e = 0;
    for (const auto& s : steps) e += (s.q_ch_kw + s.q_dis_kw) * dt_h;
    return e;
  }
  double bes_throughput_kwh() const {
    double e = 0;
    for (const auto& s : steps) e += (s.p_bes_ch_kw + s.p_bes_dis_kw) * dt_h;
    return e;
  }
};

struct MpcOptions {
  int horizon_steps = 24;  // model steps per prediction horizon
  int control_steps = 1;   // model steps applied per re-solve
  int cut_count = 8;
  bool milp_commitment = false;
  double terminal_value_tes_per_kwh = 0.0;
  double terminal_value_bes_per_kwh = 0.0;
  double forecast_noise_std = 0.0;  // multiplicative, future steps only
  std::uint64_t noise_seed = 0;
  SimplexOptions simplex;
};

/// Receding-horizon control against the nonlinear plant: at each control
/// instant solve the horizon problem from the plant's current state, apply
/// only the leading control moves, advance the plant, and fold its realized
/// peak back in as the demand-charge incumbent.
inline DispatchTrace run_mpc(const ProfileSet& profiles, const Tariff& tariff,
                             PlantSim& plant, const MpcOptions& opt = {}) {
  profiles.validate();
  tariff.validate();
  const int n = profiles.size();
  if (opt.horizon_steps < 1) throw InputError("mpc horizon must be >= 1 step");
  if (n < opt.horizon_steps)
    throw InputError("profile shorter than one MPC horizon");
  if (opt.control_steps < 1 || opt.control_steps > opt.horizon_steps)
    throw InputError("control interval must lie within the horizon");

  const double dt = profiles.dt_h;
  const AssetFleet& fleet = plant.fleet();
  DispatchTrace trace;
  trace.start = profiles.start;
  trace.dt_h = dt;
  trace.steps.reserve(std::size_t(n));

  std::mt19937_64 noise_rng(opt.noise_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  for (int t0 = 0; t0 < n; t0 += opt.control_steps) {
    const int K = std::min(opt.horizon_steps, n - t0);
    HorizonInputs in;
    in.start = profiles.timestamp_at(t0);
    in.dt_h = dt;
    in.steps = K;
    in.tes_soc0 = plant.state().tes_soc;
    in.bes_soc0 = plant.state().bes_soc;
    in.terminal_value_tes_per_kwh = opt.terminal_value_tes_per_kwh;
    in.terminal_value_bes_per_kwh = opt.terminal_value_bes_per_kwh;
    in.q_load_kw.resize(std::size_t(K));
    in.p_non_kw.resize(std::size_t(K));
    in.price_per_kwh.resize(std::size_t(K));
    in.op_base.resize(std::size_t(K));
    in.op_tes.resize(std::size_t(K));
    for (int j = 0; j < K; ++j) {
      const int i = t0 + j;
      double fc = 1.0, fe = 1.0;
      if (opt.forecast_noise_std > 0 && j > 0) {
        fc = std::max(0.0, 1.0 + opt.forecast_noise_std * gauss(noise_rng));
        fe = std::max(0.0, 1.0 + opt.forecast_noise_std * gauss(noise_rng));
      }
      in.q_load_kw[std::size_t(j)] = profiles.cooling_kw[std::size_t(i)] * fc;
      in.p_non_kw[std::size_t(j)] = profiles.electric_kw[std::size_t(i)] * fe;
      in.price_per_kwh[std::size_t(j)] =
          price_at(tariff, profiles.timestamp_at(i));
      in.op_base[std::size_t(j)] =
          plant.operating_point_base(profiles.oat_c[std::size_t(i)]);
      in.op_tes[std::size_t(j)] =
          plant.operating_point_tes(profiles.oat_c[std::size_t(i)]);
      const MonthKey m = in.month_at(j);
      if (!in.demand_rate_per_kw.count(m)) {
        in.demand_rate_per_kw[m] = demand_rate_at(tariff, m);
        in.incumbent_peak_kw[m] =
            m == plant.state().month ? plant.state().month_peak_kw : 0.0;
      }
    }

    DispatchOptions dopt;
    dopt.cut_count = opt.cut_count;
    dopt.milp_commitment = opt.milp_commitment;
    DispatchProblem dp;
    try {
      dp = build_dispatch_problem(in, fleet, dopt);
    } catch (const InfeasibleProblemError& e) {
      throw InfeasibleProblemError(
          "horizon starting at step " + std::to_string(t0) + ": " + e.what(),
          t0 + std::max(0, e.step()));
    }
    LpSolution sol;
    if (opt.milp_commitment) {
      BranchBoundOptions bopt;
      bopt.lp = opt.simplex;
      sol = solve_milp(dp.lp, bopt);
    } else {
      sol = solve_lp(dp.lp, opt.simplex);
    }
    ++trace.solves;
    trace.lp_iterations += sol.iterations;
    if (sol.status == SolveStatus::kInfeasible)
      throw InfeasibleProblemError(
          "horizon starting at step " + std::to_string(t0) + " is infeasible",
          t0);
    if (sol.status != SolveStatus::kOptimal)
      throw SolverLimitError("horizon starting at step " + std::to_string(t0) +
                             ": solver returned " +
                             std::string(to_string(sol.status)));

    const int apply = std::min(opt.control_steps, n - t0);
    for (int j = 0; j < apply && j < K; ++j) {
      const int i = t0 + j;
      const ControlAction action =
          extract_action_at(dp, sol, j, profiles.cooling_kw[std::size_t(i)]);
      const PlantStepResult res =
          plant.step(action, profiles.cooling_kw[std::size_t(i)],
                     profiles.electric_kw[std::size_t(i)],
                     profiles.oat_c[std::size_t(i)], dt);
      TraceStep row;
      row.t = profiles.timestamp_at(i);
      row.q_load_kw = profiles.cooling_kw[std::size_t(i)];
      row.p_non_kw = profiles.electric_kw[std::size_t(i)];
      row.oat_c = profiles.oat_c[std::size_t(i)];
      row.price_per_kwh = price_at(tariff, row.t);
      row.demand_rate_per_kw = demand_rate_at(tariff, month_key(row.t));
      row.q_ch_kw = res.q_ch_kw;
      row.q_dis_kw = res.q_dis_kw;
      row.tes_soc = res.tes_soc;
      row.p_bes_ch_kw = res.p_bes_ch_kw;
      row.p_bes_dis_kw = res.p_bes_dis_kw;
      row.bes_soc = res.bes_soc;
      row.p_base_kw = res.p_base_kw;
      row.p_tesch_kw = res.p_tesch_kw;
      row.p_bes_net_kw = res.p_bes_net_kw;
      row.p_total_kw = res.p_total_kw;
      row.unmet_cooling_kw = res.unmet_cooling_kw;
      row.clamped = res.clamped;
      trace.unmet_cooling_kwh += res.unmet_cooling_kw * dt;
      if (res.clamped)
        trace.mismatch_events.push_back("step " + std::to_string(i) + " (" +
                                        format_iso_timestamp(row.t) + "): " +
                                        res.clamp_reason);
      trace.steps.push_back(row);
    }
  }

  trace.bill = compute_bill(tariff, trace.start, trace.p_total_series(), dt);
  return trace;
}

/// The no-storage reference: the base chiller alone serves the cooling load
/// step by step. Throws when the chiller cannot cover the demand.
inline DispatchTrace baseline_dispatch(const ProfileSet& profiles,
                                       const Tariff& tariff,
                                       const ChillerSpec& base_chiller,
                                       const PlantConfig& cfg = {}) {
  profiles.validate();
  tariff.validate();
  base_chiller.validate();
  DispatchTrace trace;
  trace.start = profiles.start;
  trace.dt_h = profiles.dt_h;
  trace.steps.reserve(std::size_t(profiles.size()));
  for (int i = 0; i < profiles.size(); ++i) {
    const double q_load = profiles.cooling_kw[std::size_t(i)];
    const OperatingPoint op{
        cfg.t_chw_base_c,
        condenser_temperature(profiles.oat_c[std::size_t(i)],
                              cfg.condenser_approach_k, cfg.op_range)
            .t_cond_c};
    const double qa = base_chiller.capacity_kw > 0
                          ? chiller_available_capacity(base_chiller, op) *
                                base_chiller.plr_max
                          : 0.0;
    if (q_load > qa + 1e-9)
      throw InfeasibleProblemError(
          "baseline infeasible at step " + std::to_string(i) +
              ": cooling demand " + std::to_string(q_load) +
              " kW exceeds base chiller deliverable " + std::to_string(qa) +
              " kW",
          i);
    TraceStep row;
    row.t = profiles.timestamp_at(i);
    row.q_load_kw = q_load;
    row.p_non_kw = profiles.electric_kw[std::size_t(i)];
    row.oat_c = profiles.oat_c[std::size_t(i)];
    row.price_per_kwh = price_at(tariff, row.t);
    row.demand_rate_per_kw = demand_rate_at(tariff, month_key(row.t));
    row.p_base_kw =
        base_chiller.capacity_kw > 0
            ? chiller_power_or_off(base_chiller, op, std::min(q_load, qa))
            : 0.0;
    row.p_total_kw = row.p_non_kw + row.p_base_kw;
    trace.steps.push_back(row);
  }
  trace.bill = compute_bill(tariff, trace.start, trace.p_total_series(),
                            profiles.dt_h);
  return trace;
}

}  // namespace storplan

#endif  // STORPLAN_MPC_HPP
