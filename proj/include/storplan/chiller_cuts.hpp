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

#ifndef STORPLAN_CHILLER_CUTS_HPP
#define STORPLAN_CHILLER_CUTS_HPP

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "storplan/chiller.hpp"
#include "storplan/errors.hpp"

namespace storplan {

/// One affine lower bound on chiller electric power over (capacity, load):
///   P >= coef_capacity * C + coef_load * q + constant.
struct ChillerCut {
  double coef_capacity = 0.0;
  double coef_load = 0.0;
  double constant = 0.0;

  double value(double capacity_kw, double q_load_kw) const {
    return coef_capacity * capacity_kw + coef_load * q_load_kw + constant;
  }
};

/// A family of such cuts. Writing power as capacity times a convex function
/// of the part-load ratio makes it a perspective function, jointly convex
/// over capacity > 0, so every tangent plane is a global lower bound and the
/// planes are parameterized by the part-load ratio alone.
struct CutSet {
  std::vector<ChillerCut> cuts;
  double psi1 = 1.0;  // capacity fraction at the operating point
  double psi2 = 1.0;  // temperature EIR fraction at the operating point

  double max_value(double capacity_kw, double q_load_kw) const {
    double best = -kChillerCutSafety;
    for (const auto& c : cuts)
      best = std::max(best, c.value(capacity_kw, q_load_kw));
    return best;
  }

  static constexpr double kChillerCutSafety = 5e-10;
};

namespace detail {

// Tangent planes of P(C, q) = C * g(q / (psi1*C)) at the given part-load
// ratios, where g(r) = psi1*psi2/cop * (c0 + c1 r + c2 r^2).
inline CutSet cuts_at_ratios(const ChillerSpec& spec, const OperatingPoint& op,
                             std::vector<double> ratios) {
  if (!spec.curves.plr_curve_convex()) {
    throw NonConvexCurveError(
        "part-load curve has a negative quadratic coefficient; outer "
        "linearization would not be a lower bound. Use the minimum "
        "part-load commitment (MILP) mode for this machine.");
  }
  const CurveValues v = eval_curves(spec.curves, op, 0.0);
  if (!(v.psi1 > 0.0))
    throw CurveEvalError("cap_ft", "capacity fraction must be positive for cuts");
  if (!(v.psi2 > 0.0))
    throw CurveEvalError("eir_ft", "EIR fraction must be positive for cuts");
  const double c0 = spec.curves.eir_plr[0];
  const double c1 = spec.curves.eir_plr[1];
  const double c2 = spec.curves.eir_plr[2];
  const double scale = v.psi1 * v.psi2 / spec.cop_ref;

  std::sort(ratios.begin(), ratios.end());
  CutSet out;
  out.psi1 = v.psi1;
  out.psi2 = v.psi2;
  double last = -1.0;
  for (double r : ratios) {
    r = std::clamp(r, 0.0, spec.plr_max);
    if (r <= last + 1e-9 * (1.0 + std::abs(last)) && !out.cuts.empty()) continue;
    last = r;
    const double g = scale * (c0 + c1 * r + c2 * r * r);
    const double gp = scale * (c1 + 2.0 * c2 * r);
    ChillerCut cut;
    cut.coef_load = gp / v.psi1;
    cut.coef_capacity = g - r * gp;
    cut.constant = -CutSet::kChillerCutSafety;
    out.cuts.push_back(cut);
    if (c2 == 0.0) break;  // affine part-load curve: one cut is exact
  }
  return out;
}

}  // namespace detail

/// Tangent-plane outer approximation of the chiller power surface over a
/// breakpoint grid of (capacity, load) points: `n_breakpoints` values per
/// axis, planes taken at every grid point's part-load ratio. Every cut
/// under-estimates the true power (to the safety margin) and is tight at
/// its breakpoint.
inline CutSet build_chiller_cuts(const ChillerSpec& spec,
                                 const OperatingPoint& op, int n_breakpoints,
                                 std::pair<double, double> c_range_kw,
                                 std::pair<double, double> q_range_kw) {
  if (n_breakpoints < 1) throw InputError("cuts need at least one breakpoint");
  if (!(c_range_kw.first > 0) || c_range_kw.second < c_range_kw.first)
    throw InputError("cut capacity range must be strictly positive");
  if (q_range_kw.first < 0 || q_range_kw.second < q_range_kw.first)
    throw InputError("cut load range must be nonnegative");
  const double psi1 =
      detail::biquadratic(spec.curves.cap_ft, op.t_chw_supply_c,
                          op.t_cond_leaving_c);
  if (!(psi1 > 0))
    throw CurveEvalError("cap_ft", "capacity fraction must be positive for cuts");
  std::vector<double> ratios;
  ratios.reserve(std::size_t(n_breakpoints) * std::size_t(n_breakpoints));
  for (int i = 0; i < n_breakpoints; ++i) {
    const double c =
        n_breakpoints == 1
            ? c_range_kw.first
            : c_range_kw.first + (c_range_kw.second - c_range_kw.first) * i /
                                     (n_breakpoints - 1);
    for (int j = 0; j < n_breakpoints; ++j) {
      const double q =
          n_breakpoints == 1
              ? q_range_kw.first
              : q_range_kw.first + (q_range_kw.second - q_range_kw.first) * j /
                                       (n_breakpoints - 1);
      ratios.push_back(q / (psi1 * c));
    }
  }
  return detail::cuts_at_ratios(spec, op, std::move(ratios));
}

/// Cuts at part-load ratios spread uniformly over [0, plr_max]. Same planes
/// as the grid form (they depend only on the ratio).
inline CutSet build_plr_cuts(const ChillerSpec& spec, const OperatingPoint& op,
                             int n_cuts) {
  if (n_cuts < 1) throw InputError("cuts need at least one breakpoint");
  std::vector<double> ratios;
  ratios.reserve(std::size_t(n_cuts));
  for (int i = 0; i < n_cuts; ++i) {
    ratios.push_back(n_cuts == 1 ? 0.0
                                 : spec.plr_max * double(i) / (n_cuts - 1));
  }
  return detail::cuts_at_ratios(spec, op, std::move(ratios));
}

/// Outer approximation of the power of a machine that may switch off (zero
/// at zero load). That function's convex envelope is the secant through the
/// origin up to the cycling ratio sqrt(c0/c2) and the curve beyond, so the
/// cut family is the origin secant plus tangents past the cycling ratio.
/// With c0 = 0 this coincides with build_plr_cuts. The dispatch and sizing
/// builders use this family, one set per chiller per step.
inline CutSet build_off_capable_plr_cuts(const ChillerSpec& spec,
                                         const OperatingPoint& op,
                                         int n_cuts) {
  if (n_cuts < 1) throw InputError("cuts need at least one breakpoint");
  if (!spec.curves.plr_curve_convex()) {
    throw NonConvexCurveError(
        "part-load curve has a negative quadratic coefficient; outer "
        "linearization would not be a lower bound. Use the minimum "
        "part-load commitment (MILP) mode for this machine.");
  }
  const double c0 = spec.curves.eir_plr[0];
  const double c1 = spec.curves.eir_plr[1];
  const double c2 = spec.curves.eir_plr[2];
  // Below the cycling ratio the tangents would sit above the off-capable
  // power; the tangent at the cycling ratio itself passes through the
  // origin, closing the family.
  const double r_cycle =
      c0 <= 0.0 ? 0.0
                : (c2 > 0.0 ? std::sqrt(c0 / c2) : spec.plr_max * 2.0);
  if (r_cycle >= spec.plr_max) {
    // The whole admissible range duty-cycles: one secant from the origin to
    // the full-load point is the exact envelope.
    const CurveValues v = eval_curves(spec.curves, op, 0.0);
    if (!(v.psi1 > 0.0))
      throw CurveEvalError("cap_ft", "capacity fraction must be positive for cuts");
    if (!(v.psi2 > 0.0))
      throw CurveEvalError("eir_ft", "EIR fraction must be positive for cuts");
    const double pm = spec.plr_max;
    const double g_pm = v.psi1 * v.psi2 / spec.cop_ref *
                        (c0 + c1 * pm + c2 * pm * pm);
    CutSet out;
    out.psi1 = v.psi1;
    out.psi2 = v.psi2;
    ChillerCut secant;
    secant.coef_capacity = 0.0;
    secant.coef_load = g_pm / (pm * v.psi1);
    secant.constant = -CutSet::kChillerCutSafety;
    out.cuts.push_back(secant);
    return out;
  }
  std::vector<double> ratios;
  for (int i = 0; i < n_cuts; ++i) {
    ratios.push_back(n_cuts == 1
                         ? r_cycle
                         : r_cycle + (spec.plr_max - r_cycle) * i / (n_cuts - 1));
  }
  return detail::cuts_at_ratios(spec, op, std::move(ratios));
}

}  // namespace storplan

#endif  // STORPLAN_CHILLER_CUTS_HPP
