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

#ifndef STORPLAN_CHILLER_HPP
#define STORPLAN_CHILLER_HPP

#include <cmath>
#include <string>

#include "storplan/errors.hpp"

namespace storplan {

/// Electric chiller performance model in the classic three-curve form:
/// a capacity-vs-temperature curve, an energy-input-ratio-vs-temperature
/// curve (both biquadratic in chilled-water supply and condenser leaving
/// temperature), and an energy-input-ratio-vs-part-load-ratio quadratic.
struct ChillerCurves {
  // cap_ft / eir_ft coefficient order:
  //   k0 + k1*Ts + k2*Ts^2 + k3*Tc + k4*Tc^2 + k5*Ts*Tc
  double cap_ft[6] = {1, 0, 0, 0, 0, 0};
  double eir_ft[6] = {1, 0, 0, 0, 0, 0};
  // eir_plr coefficient order: c0 + c1*plr + c2*plr^2
  double eir_plr[3] = {0, 1, 0};

  /// Curves that reduce the power model to load/COP; handy in tests.
  static ChillerCurves identity() { return ChillerCurves{}; }

  /// The part-load curve is convex (required for cut generation).
  bool plr_curve_convex() const { return eir_plr[2] >= 0.0; }
};

/// Chilled-water supply setpoint and condenser leaving temperature, degC.
struct OperatingPoint {
  double t_chw_supply_c = 6.67;
  double t_cond_leaving_c = 29.4;
};

/// Physical range a plausible operating point must stay within, degC.
struct OperatingRange {
  double min_c = -10.0;
  double max_c = 60.0;
  bool contains(const OperatingPoint& op) const {
    return op.t_chw_supply_c >= min_c && op.t_chw_supply_c <= max_c &&
           op.t_cond_leaving_c >= min_c && op.t_cond_leaving_c <= max_c;
  }
};

struct ChillerSpec {
  double capacity_kw = 0.0;  // reference thermal capacity
  double cop_ref = 1.0;      // coefficient of performance at reference
  ChillerCurves curves;
  double min_plr = 0.0;  // 0 disables commitment binaries
  double plr_max = 1.0;

  void validate() const {
    if (capacity_kw < 0) throw InputError("chiller capacity must be >= 0");
    if (cop_ref <= 0) throw InputError("chiller cop_ref must be > 0");
    if (min_plr < 0 || min_plr >= 1)
      throw InputError("chiller min_plr must lie in [0, 1)");
    if (plr_max <= 0) throw InputError("chiller plr_max must be > 0");
  }
};

struct CurveValues {
  double psi1 = 1.0;  // capacity fraction of reference
  double psi2 = 1.0;  // energy input ratio fraction (temperature)
  double psi3 = 0.0;  // energy input ratio fraction (part load)
};

namespace detail {
inline double biquadratic(const double (&k)[6], double ts, double tc) {
  return k[0] + k[1] * ts + k[2] * ts * ts + k[3] * tc + k[4] * tc * tc +
         k[5] * ts * tc;
}
}  // namespace detail

/// Evaluates the temperature curves at `op` and the part-load curve at `plr`.
/// Throws CurveEvalError if any result is non-finite, naming the curve.
inline CurveValues eval_curves(const ChillerCurves& curves,
                               const OperatingPoint& op, double plr) {
  CurveValues v;
  v.psi1 = detail::biquadratic(curves.cap_ft, op.t_chw_supply_c,
                               op.t_cond_leaving_c);
  v.psi2 = detail::biquadratic(curves.eir_ft, op.t_chw_supply_c,
                               op.t_cond_leaving_c);
  v.psi3 = curves.eir_plr[0] + curves.eir_plr[1] * plr +
           curves.eir_plr[2] * plr * plr;
  if (!std::isfinite(v.psi1)) throw CurveEvalError("cap_ft", "non-finite value");
  if (!std::isfinite(v.psi2)) throw CurveEvalError("eir_ft", "non-finite value");
  if (!std::isfinite(v.psi3))
    throw CurveEvalError("eir_plr", "non-finite value");
  return v;
}

/// Available cooling capacity at the operating point, kW thermal.
inline double chiller_available_capacity(const ChillerSpec& spec,
                                         const OperatingPoint& op) {
  const double psi1 =
      detail::biquadratic(spec.curves.cap_ft, op.t_chw_supply_c,
                          op.t_cond_leaving_c);
  if (!std::isfinite(psi1)) throw CurveEvalError("cap_ft", "non-finite value");
  return spec.capacity_kw * psi1;
}

struct ChillerOutput {
  double p_elec_kw = 0.0;
  double q_avail_kw = 0.0;
  double plr = 0.0;
};

/// Electric compressor power to deliver `q_load_kw` of cooling.
/// Throws CapacityExceededError when the load exceeds the available capacity
/// times plr_max; the error carries the deficit.
inline ChillerOutput chiller_power(const ChillerSpec& spec,
                                   const OperatingPoint& op,
                                   double q_load_kw) {
  if (q_load_kw < 0) throw InputError("chiller load must be >= 0");
  const double q_avail = chiller_available_capacity(spec, op);
  if (!(q_avail > 0)) {
    throw CurveEvalError("cap_ft", "available capacity is not positive (" +
                                        std::to_string(q_avail) + " kW)");
  }
  const double plr = q_load_kw / q_avail;
  if (plr > spec.plr_max * (1.0 + 1e-12)) {
    const double deficit = q_load_kw - q_avail * spec.plr_max;
    throw CapacityExceededError(
        deficit, "cooling load " + std::to_string(q_load_kw) +
                     " kW exceeds deliverable " +
                     std::to_string(q_avail * spec.plr_max) + " kW (deficit " +
                     std::to_string(deficit) + " kW)");
  }
  const CurveValues v = eval_curves(spec.curves, op, plr);
  ChillerOutput out;
  out.q_avail_kw = q_avail;
  out.plr = plr;
  out.p_elec_kw = q_avail * (1.0 / spec.cop_ref) * v.psi2 * v.psi3;
  return out;
}

/// Electric power when the machine is allowed to switch off: zero at zero
/// load, the curve model otherwise. This is what the plant realizes; the
/// curve's part-load intercept only applies to a machine that is running.
inline double chiller_power_or_off(const ChillerSpec& spec,
                                   const OperatingPoint& op,
                                   double q_load_kw) {
  if (q_load_kw <= 1e-9) return 0.0;
  return chiller_power(spec, op, q_load_kw).p_elec_kw;
}

/// Example coefficient set in the style of a generic electric centrifugal
/// chiller. Illustrative defaults for demos, not manufacturer data; real
/// studies should load curves fitted to the actual machine.
inline ChillerCurves example_centrifugal_curves() {
  ChillerCurves c;
  const double cap[6] = {0.257896,    0.0389016,  -0.00021708,
                         0.0468684,   -0.00094284, -0.00034344};
  const double eir[6] = {0.933884,   -0.058212, 0.00450036,
                         0.00243,    0.000486,  -0.001215};
  const double plr[3] = {0.222903, 0.313387, 0.46371};
  for (int i = 0; i < 6; ++i) {
    c.cap_ft[i] = cap[i];
    c.eir_ft[i] = eir[i];
  }
  for (int i = 0; i < 3; ++i) c.eir_plr[i] = plr[i];
  return c;
}

}  // namespace storplan

#endif  // STORPLAN_CHILLER_HPP
