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

#ifndef STORPLAN_STORAGE_HPP
#define STORPLAN_STORAGE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "storplan/errors.hpp"

namespace storplan {

/// Piecewise-linear map over a scalar (used for SOC-dependent rate limits).
/// Linear interpolation between knots, clamped to the end values outside the
/// knot range. Knot x values must be strictly increasing.
class PiecewiseLinear {
 public:
  PiecewiseLinear() : xs_{0.0}, ys_{0.0} {}
  PiecewiseLinear(std::vector<double> xs, std::vector<double> ys)
      : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.empty() || xs_.size() != ys_.size())
      throw InputError("piecewise table needs matching, nonempty x/y lists");
    for (std::size_t i = 1; i < xs_.size(); ++i) {
      if (!(xs_[i] > xs_[i - 1]))
        throw InputError("piecewise table x values must strictly increase");
    }
  }

  static PiecewiseLinear constant(double y) { return PiecewiseLinear({0.0}, {y}); }

  double operator()(double x) const {
    if (x <= xs_.front()) return ys_.front();
    if (x >= xs_.back()) return ys_.back();
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const std::size_t i = std::size_t(it - xs_.begin());
    const double w = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
    return ys_[i - 1] + w * (ys_[i] - ys_[i - 1]);
  }

  bool is_constant() const { return xs_.size() == 1; }
  double min_on(double lo, double hi) const {
    double m = std::min((*this)(lo), (*this)(hi));
    for (std::size_t i = 0; i < xs_.size(); ++i)
      if (xs_[i] > lo && xs_[i] < hi) m = std::min(m, ys_[i]);
    return m;
  }
  double max_on(double lo, double hi) const {
    double m = std::max((*this)(lo), (*this)(hi));
    for (std::size_t i = 0; i < xs_.size(); ++i)
      if (xs_[i] > lo && xs_[i] < hi) m = std::max(m, ys_[i]);
    return m;
  }

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }

  /// Affine pieces as (slope, intercept) pairs, plus the clamped end levels.
  /// The pointwise minimum of these lines equals the table iff it is concave;
  /// the optimizer uses them as a concave over-estimate otherwise.
  struct Line {
    double slope;
    double intercept;
  };
  std::vector<Line> envelope_lines() const {
    std::vector<Line> lines;
    if (xs_.size() == 1) {
      lines.push_back({0.0, ys_[0]});
      return lines;
    }
    lines.push_back({0.0, ys_.front()});  // left clamp
    for (std::size_t i = 1; i < xs_.size(); ++i) {
      const double s = (ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1]);
      lines.push_back({s, ys_[i - 1] - s * xs_[i - 1]});
    }
    lines.push_back({0.0, ys_.back()});  // right clamp
    return lines;
  }

 private:
  std::vector<double> xs_, ys_;
};

/// Ice-tank thermal storage parameters. SOC is stored energy as a fraction
/// of capacity; rate limits may depend on SOC through piecewise tables
/// evaluated at the beginning-of-step SOC.
struct TesSpec {
  double capacity_kwh = 0.0;
  double soc_min = 0.0;
  double soc_max = 1.0;
  PiecewiseLinear max_charge_kw = PiecewiseLinear::constant(
      std::numeric_limits<double>::infinity());
  PiecewiseLinear max_discharge_kw = PiecewiseLinear::constant(
      std::numeric_limits<double>::infinity());
  double standby_loss_per_step = 0.0;  // fraction of SOC lost per step

  void validate() const {
    if (capacity_kwh < 0) throw InputError("TES capacity must be >= 0");
    if (!(soc_min >= 0 && soc_min < soc_max && soc_max <= 1.0))
      throw InputError("TES SOC bounds must satisfy 0 <= min < max <= 1");
    if (standby_loss_per_step < 0 || standby_loss_per_step >= 1)
      throw InputError("TES standby loss must lie in [0, 1)");
    for (double l = soc_min; l <= soc_max + 1e-12; l += (soc_max - soc_min) / 16.0) {
      if (max_charge_kw(l) < 0 || max_discharge_kw(l) < 0)
        throw InputError("TES rate curves must be nonnegative on the SOC range");
    }
  }
};

/// Battery storage parameters. Charge/discharge efficiencies act on the
/// stored energy; the grid sees p_ch - p_dis.
struct BesSpec {
  double capacity_kwh = 0.0;
  double power_max_kw = 0.0;
  double eta_charge = 1.0;
  double eta_discharge = 1.0;
  double soc_min = 0.0;
  double soc_max = 1.0;

  void validate() const {
    if (capacity_kwh < 0) throw InputError("BES capacity must be >= 0");
    if (power_max_kw < 0) throw InputError("BES power limit must be >= 0");
    if (!(eta_charge > 0 && eta_charge <= 1.0) ||
        !(eta_discharge > 0 && eta_discharge <= 1.0))
      throw InputError("BES efficiencies must lie in (0, 1]");
    if (!(soc_min >= 0 && soc_min < soc_max && soc_max <= 1.0))
      throw InputError("BES SOC bounds must satisfy 0 <= min < max <= 1");
  }
};

/// Largest admissible charge/discharge rates at the given TES SOC, kW.
/// Charge is limited by the dedicated chiller, the headroom to soc_max, and
/// the SOC-dependent rate table; discharge by the cooling demand, the energy
/// above soc_min, and its rate table. Standby loss is applied to the
/// headroom terms so that the returned rates always survive tes_step.
struct TesBounds {
  double q_ch_max_kw = 0.0;
  double q_dis_max_kw = 0.0;
};

inline TesBounds feasible_bounds(const TesSpec& tes, double soc,
                                 double tes_chiller_cap_kw, double q_cool_kw,
                                 double dt_h) {
  if (dt_h <= 0) throw InputError("dt must be > 0");
  const double kept = soc * (1.0 - tes.standby_loss_per_step);
  TesBounds b;
  const double headroom_kw = (tes.soc_max - kept) * tes.capacity_kwh / dt_h;
  const double avail_kw = (kept - tes.soc_min) * tes.capacity_kwh / dt_h;
  b.q_ch_max_kw = std::max(
      0.0, std::min({tes_chiller_cap_kw, headroom_kw, tes.max_charge_kw(soc)}));
  b.q_dis_max_kw = std::max(
      0.0, std::min({q_cool_kw, avail_kw, tes.max_discharge_kw(soc)}));
  return b;
}

/// Advances the TES state of charge by one step of dt_h hours.
/// Controls must respect the bounds at the beginning-of-step SOC; a
/// violation throws InfeasibleControlError naming the binding limit.
inline double tes_step(const TesSpec& tes, double soc, double q_ch_kw,
                       double q_dis_kw, double dt_h) {
  if (tes.capacity_kwh <= 0) {
    if (q_ch_kw > 0 || q_dis_kw > 0)
      throw InfeasibleControlError("capacity",
                                   "TES has zero capacity but nonzero flows");
    return soc;
  }
  const double tol = 1e-9;
  if (q_ch_kw < -tol)
    throw InfeasibleControlError("charge >= 0", "negative TES charge rate");
  if (q_dis_kw < -tol)
    throw InfeasibleControlError("discharge >= 0",
                                 "negative TES discharge rate");
  const double rate_ch = tes.max_charge_kw(soc);
  const double rate_dis = tes.max_discharge_kw(soc);
  if (q_ch_kw > rate_ch * (1 + tol) + tol)
    throw InfeasibleControlError(
        "max charge rate", "TES charge " + std::to_string(q_ch_kw) +
                               " kW exceeds rate limit " +
                               std::to_string(rate_ch) + " kW");
  if (q_dis_kw > rate_dis * (1 + tol) + tol)
    throw InfeasibleControlError(
        "max discharge rate", "TES discharge " + std::to_string(q_dis_kw) +
                                  " kW exceeds rate limit " +
                                  std::to_string(rate_dis) + " kW");
  const double kept = soc * (1.0 - tes.standby_loss_per_step);
  const double next =
      kept + (q_ch_kw - q_dis_kw) * dt_h / tes.capacity_kwh;
  if (next > tes.soc_max + tol)
    throw InfeasibleControlError(
        "soc_max", "TES SOC " + std::to_string(next) + " would exceed " +
                       std::to_string(tes.soc_max));
  if (next < tes.soc_min - tol)
    throw InfeasibleControlError(
        "soc_min", "TES SOC " + std::to_string(next) + " would fall below " +
                       std::to_string(tes.soc_min));
  return std::clamp(next, tes.soc_min, tes.soc_max);
}

struct BesStepResult {
  double soc = 0.0;
  double p_net_kw = 0.0;  // grid-side power, charge minus discharge
};

/// Advances the BES state of charge; p_net is what the meter sees.
inline BesStepResult bes_step(const BesSpec& bes, double soc, double p_ch_kw,
                              double p_dis_kw, double dt_h) {
  const double tol = 1e-9;
  if (p_ch_kw < -tol || p_dis_kw < -tol)
    throw InfeasibleControlError("power >= 0", "negative BES power");
  if (p_ch_kw > bes.power_max_kw * (1 + tol) + tol)
    throw InfeasibleControlError(
        "power_max", "BES charge " + std::to_string(p_ch_kw) +
                         " kW exceeds limit " +
                         std::to_string(bes.power_max_kw) + " kW");
  if (p_dis_kw > bes.power_max_kw * (1 + tol) + tol)
    throw InfeasibleControlError(
        "power_max", "BES discharge " + std::to_string(p_dis_kw) +
                         " kW exceeds limit " +
                         std::to_string(bes.power_max_kw) + " kW");
  BesStepResult r;
  r.p_net_kw = p_ch_kw - p_dis_kw;
  if (bes.capacity_kwh <= 0) {
    if (p_ch_kw > tol || p_dis_kw > tol)
      throw InfeasibleControlError("capacity",
                                   "BES has zero capacity but nonzero flows");
    r.soc = soc;
    return r;
  }
  const double next =
      soc + (p_ch_kw * bes.eta_charge - p_dis_kw / bes.eta_discharge) * dt_h /
                bes.capacity_kwh;
  if (next > bes.soc_max + tol)
    throw InfeasibleControlError(
        "soc_max", "BES SOC " + std::to_string(next) + " would exceed " +
                       std::to_string(bes.soc_max));
  if (next < bes.soc_min - tol)
    throw InfeasibleControlError(
        "soc_min", "BES SOC " + std::to_string(next) + " would fall below " +
                       std::to_string(bes.soc_min));
  r.soc = std::clamp(next, bes.soc_min, bes.soc_max);
  return r;
}

/// Largest BES charge/discharge powers the SOC bounds admit at `soc`.
struct BesBounds {
  double p_ch_max_kw = 0.0;
  double p_dis_max_kw = 0.0;
};

inline BesBounds bes_feasible_bounds(const BesSpec& bes, double soc,
                                     double dt_h) {
  if (dt_h <= 0) throw InputError("dt must be > 0");
  BesBounds b;
  if (bes.capacity_kwh <= 0) return b;
  b.p_ch_max_kw = std::max(
      0.0, std::min(bes.power_max_kw, (bes.soc_max - soc) * bes.capacity_kwh /
                                          (dt_h * bes.eta_charge)));
  b.p_dis_max_kw = std::max(
      0.0, std::min(bes.power_max_kw, (soc - bes.soc_min) * bes.capacity_kwh *
                                          bes.eta_discharge / dt_h));
  return b;
}

}  // namespace storplan

#endif  // STORPLAN_STORAGE_HPP
