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

#ifndef STORPLAN_PLANT_HPP
#define STORPLAN_PLANT_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "storplan/assets.hpp"
#include "storplan/calendar.hpp"
#include "storplan/dispatch.hpp"

namespace storplan {

struct PlantConfig {
  double t_chw_base_c = 6.67;   // chilled water setpoint, cooling loop
  double t_chw_tes_c = -5.0;    // charging loop setpoint (ice making)
  double condenser_approach_k = 3.0;
  OperatingRange op_range;
};

struct CondenserResult {
  double t_cond_c = 0.0;
  bool clamped = false;
};

/// Condenser leaving temperature as outdoor air plus a fixed approach,
/// clamped into the plausible operating range.
inline CondenserResult condenser_temperature(double outdoor_air_c,
                                             double approach_k,
                                             const OperatingRange& range = {}) {
  if (approach_k < 0) throw InputError("condenser approach must be >= 0");
  CondenserResult r;
  r.t_cond_c = outdoor_air_c + approach_k;
  if (r.t_cond_c < range.min_c) {
    r.t_cond_c = range.min_c;
    r.clamped = true;
  } else if (r.t_cond_c > range.max_c) {
    r.t_cond_c = range.max_c;
    r.clamped = true;
  }
  return r;
}

/// Truth-model state: storage SOCs, the realized power history and the
/// month-to-date peak used as the demand-charge incumbent.
struct PlantState {
  double tes_soc = 0.5;
  double bes_soc = 0.5;
  Timestamp now = 0;
  MonthKey month = 0;
  double month_peak_kw = 0.0;
  std::vector<double> p_total_history_kw;
};

/// What one plant step did: realized powers, delivered cooling, and any
/// clamping that was needed to keep the commanded controls feasible.
struct PlantStepResult {
  double q_ch_kw = 0.0;
  double q_dis_kw = 0.0;
  double p_bes_ch_kw = 0.0;
  double p_bes_dis_kw = 0.0;
  double p_base_kw = 0.0;
  double p_tesch_kw = 0.0;
  double p_bes_net_kw = 0.0;
  double p_total_kw = 0.0;
  double delivered_cooling_kw = 0.0;
  double unmet_cooling_kw = 0.0;
  double tes_soc = 0.0;
  double bes_soc = 0.0;
  OperatingPoint op_base, op_tes;
  bool clamped = false;
  std::string clamp_reason;
};

/// Advances the full nonlinear models under an applied control: no
/// linearization anywhere. Controls outside the feasible bounds at the
/// current state are clamped and the event recorded; cooling demand beyond
/// the hardware becomes an unmet-load event rather than an abort.
class PlantSim {
 public:
  PlantSim(AssetFleet fleet, PlantConfig cfg, double tes_soc0, double bes_soc0,
           Timestamp start)
      : fleet_(std::move(fleet)), cfg_(cfg) {
    fleet_.validate();
    state_.tes_soc = tes_soc0;
    state_.bes_soc = bes_soc0;
    state_.now = start;
    state_.month = month_key(start);
  }

  const PlantState& state() const { return state_; }
  const AssetFleet& fleet() const { return fleet_; }
  const PlantConfig& config() const { return cfg_; }

  OperatingPoint operating_point_base(double oat_c) const {
    return OperatingPoint{cfg_.t_chw_base_c,
                          condenser_temperature(oat_c, cfg_.condenser_approach_k,
                                                cfg_.op_range)
                              .t_cond_c};
  }
  OperatingPoint operating_point_tes(double oat_c) const {
    return OperatingPoint{cfg_.t_chw_tes_c,
                          condenser_temperature(oat_c, cfg_.condenser_approach_k,
                                                cfg_.op_range)
                              .t_cond_c};
  }

  PlantStepResult step(const ControlAction& action, double q_load_kw,
                       double p_non_kw, double oat_c, double dt_h) {
    PlantStepResult r;
    r.op_base = operating_point_base(oat_c);
    r.op_tes = operating_point_tes(oat_c);

    const double qa_tes =
        fleet_.tes_chiller.capacity_kw > 0
            ? chiller_available_capacity(fleet_.tes_chiller, r.op_tes) *
                  fleet_.tes_chiller.plr_max
            : 0.0;
    const TesBounds tb =
        feasible_bounds(fleet_.tes, state_.tes_soc, qa_tes, q_load_kw, dt_h);
    r.q_ch_kw = action.q_ch_kw;
    r.q_dis_kw = action.q_dis_kw;
    if (r.q_ch_kw > tb.q_ch_max_kw + 1e-9) {
      r.q_ch_kw = tb.q_ch_max_kw;
      r.clamped = true;
      r.clamp_reason = "tes charge clamped to " + std::to_string(tb.q_ch_max_kw) + " kW";
    }
    if (r.q_dis_kw > tb.q_dis_max_kw + 1e-9) {
      r.q_dis_kw = tb.q_dis_max_kw;
      r.clamped = true;
      if (!r.clamp_reason.empty()) r.clamp_reason += "; ";
      r.clamp_reason += "tes discharge clamped to " + std::to_string(tb.q_dis_max_kw) + " kW";
    }
    r.q_ch_kw = std::max(0.0, r.q_ch_kw);
    r.q_dis_kw = std::max(0.0, r.q_dis_kw);

    // Advance the ice tank, then settle the chillers so the no-export check
    // below can see the realized plant draw.
    state_.tes_soc = tes_step(fleet_.tes, state_.tes_soc, r.q_ch_kw, r.q_dis_kw, dt_h);
    r.tes_soc = state_.tes_soc;

    // Base chiller covers whatever the TES discharge leaves over.
    const double q_base_need = std::max(0.0, q_load_kw - r.q_dis_kw);
    const double qa_base =
        fleet_.base_chiller.capacity_kw > 0
            ? chiller_available_capacity(fleet_.base_chiller, r.op_base) *
                  fleet_.base_chiller.plr_max
            : 0.0;
    const double q_base = std::min(q_base_need, qa_base);
    r.unmet_cooling_kw = q_base_need - q_base;
    r.delivered_cooling_kw = q_base + r.q_dis_kw;
    r.p_base_kw = fleet_.base_chiller.capacity_kw > 0
                      ? chiller_power_or_off(fleet_.base_chiller, r.op_base, q_base)
                      : 0.0;
    r.p_tesch_kw =
        fleet_.tes_chiller.capacity_kw > 0
            ? chiller_power_or_off(fleet_.tes_chiller, r.op_tes, r.q_ch_kw)
            : 0.0;

    const BesBounds bb = bes_feasible_bounds(fleet_.bes, state_.bes_soc, dt_h);
    r.p_bes_ch_kw = action.p_bes_ch_kw;
    r.p_bes_dis_kw = action.p_bes_dis_kw;
    if (r.p_bes_ch_kw > bb.p_ch_max_kw + 1e-9) {
      r.p_bes_ch_kw = bb.p_ch_max_kw;
      r.clamped = true;
      if (!r.clamp_reason.empty()) r.clamp_reason += "; ";
      r.clamp_reason += "bes charge clamped to " + std::to_string(bb.p_ch_max_kw) + " kW";
    }
    // No backfeed: discharge may at most zero the building draw.
    const double p_dis_cap = std::min(
        bb.p_dis_max_kw,
        std::max(0.0, p_non_kw + r.p_base_kw + r.p_tesch_kw + r.p_bes_ch_kw));
    if (r.p_bes_dis_kw > p_dis_cap + 1e-9) {
      r.p_bes_dis_kw = p_dis_cap;
      r.clamped = true;
      if (!r.clamp_reason.empty()) r.clamp_reason += "; ";
      r.clamp_reason += "bes discharge clamped to " + std::to_string(p_dis_cap) + " kW";
    }
    r.p_bes_ch_kw = std::max(0.0, r.p_bes_ch_kw);
    r.p_bes_dis_kw = std::max(0.0, r.p_bes_dis_kw);

    const BesStepResult bs =
        bes_step(fleet_.bes, state_.bes_soc, r.p_bes_ch_kw, r.p_bes_dis_kw, dt_h);
    state_.bes_soc = bs.soc;
    r.p_bes_net_kw = bs.p_net_kw;
    r.bes_soc = state_.bes_soc;
    r.p_total_kw = p_non_kw + r.p_base_kw + r.p_tesch_kw + r.p_bes_net_kw;

    // Month-to-date peak, reset on month boundaries.
    const MonthKey m = month_key(state_.now);
    if (m != state_.month) {
      state_.month = m;
      state_.month_peak_kw = 0.0;
    }
    state_.month_peak_kw = std::max(state_.month_peak_kw, r.p_total_kw);
    state_.p_total_history_kw.push_back(r.p_total_kw);
    state_.now += Timestamp(dt_h * 3600.0 + 0.5);
    return r;
  }

 private:
  AssetFleet fleet_;
  PlantConfig cfg_;
  PlantState state_;
};

}  // namespace storplan

#endif  // STORPLAN_PLANT_HPP
