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

#ifndef STORPLAN_REPORT_HPP
#define STORPLAN_REPORT_HPP

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "storplan/mpc.hpp"
#include "storplan/sizing.hpp"

namespace storplan {

/// Side-by-side economics of a baseline and a storage-equipped run.
/// Savings are (baseline - optimized); negative components are legitimate
/// (energy spend can rise while the total bill falls).
struct RunReport {
  std::string scenario_id;
  std::optional<SizingResult> sizing;
  BillingResult baseline_bill;
  BillingResult optimized_bill;
  double saving_energy = 0, saving_demand = 0, saving_total = 0;
  double saving_energy_pct = 0, saving_demand_pct = 0, saving_total_pct = 0;
  double baseline_peak_kw = 0, optimized_peak_kw = 0;
  double peak_reduction_kw = 0, peak_reduction_pct = 0;
  double unmet_cooling_kwh = 0;
  int mismatch_events = 0;
};

inline RunReport make_run_report(const std::string& scenario_id,
                                 const DispatchTrace& baseline,
                                 const DispatchTrace& optimized,
                                 std::optional<SizingResult> sizing = {}) {
  RunReport r;
  r.scenario_id = scenario_id;
  r.sizing = std::move(sizing);
  r.baseline_bill = baseline.bill;
  r.optimized_bill = optimized.bill;
  r.saving_energy = baseline.bill.energy_charge - optimized.bill.energy_charge;
  r.saving_demand = baseline.bill.demand_charge - optimized.bill.demand_charge;
  r.saving_total = baseline.bill.total - optimized.bill.total;
  auto pct = [](double saving, double base) {
    return base != 0.0 ? 100.0 * saving / base : 0.0;
  };
  r.saving_energy_pct = pct(r.saving_energy, baseline.bill.energy_charge);
  r.saving_demand_pct = pct(r.saving_demand, baseline.bill.demand_charge);
  r.saving_total_pct = pct(r.saving_total, baseline.bill.total);
  for (const auto& [m, p] : baseline.bill.peaks_kw)
    r.baseline_peak_kw = std::max(r.baseline_peak_kw, p);
  for (const auto& [m, p] : optimized.bill.peaks_kw)
    r.optimized_peak_kw = std::max(r.optimized_peak_kw, p);
  r.peak_reduction_kw = r.baseline_peak_kw - r.optimized_peak_kw;
  r.peak_reduction_pct = pct(r.peak_reduction_kw, r.baseline_peak_kw);
  r.unmet_cooling_kwh = optimized.unmet_cooling_kwh;
  r.mismatch_events = int(optimized.mismatch_events.size());
  return r;
}

namespace repdetail {
inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}
}  // namespace repdetail

/// One row per step: exogenous inputs, applied controls, realized powers,
/// prices, and the matching baseline draw, so every report number can be
/// recomputed from this file alone.
inline void write_trace_csv(const std::string& path,
                            const DispatchTrace& optimized,
                            const DispatchTrace* baseline = nullptr) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << "timestamp,q_load_kw,p_non_kw,oat_c,price_per_kwh,demand_rate_per_kw,"
         "q_ch_kw,q_dis_kw,tes_soc,p_bes_ch_kw,p_bes_dis_kw,bes_soc,"
         "p_base_kw,p_tesch_kw,p_bes_net_kw,p_total_kw,unmet_cooling_kw,"
         "clamped,baseline_p_total_kw\n";
  using repdetail::fixed6;
  for (std::size_t i = 0; i < optimized.steps.size(); ++i) {
    const TraceStep& s = optimized.steps[i];
    const double bl = baseline && i < baseline->steps.size()
                          ? baseline->steps[i].p_total_kw
                          : 0.0;
    out << format_iso_timestamp(s.t) << ',' << fixed6(s.q_load_kw) << ','
        << fixed6(s.p_non_kw) << ',' << fixed6(s.oat_c) << ','
        << fixed6(s.price_per_kwh) << ',' << fixed6(s.demand_rate_per_kw) << ','
        << fixed6(s.q_ch_kw) << ',' << fixed6(s.q_dis_kw) << ','
        << fixed6(s.tes_soc) << ',' << fixed6(s.p_bes_ch_kw) << ','
        << fixed6(s.p_bes_dis_kw) << ',' << fixed6(s.bes_soc) << ','
        << fixed6(s.p_base_kw) << ',' << fixed6(s.p_tesch_kw) << ','
        << fixed6(s.p_bes_net_kw) << ',' << fixed6(s.p_total_kw) << ','
        << fixed6(s.unmet_cooling_kw) << ',' << (s.clamped ? 1 : 0) << ','
        << fixed6(bl) << "\n";
  }
}

/// Storage state trajectories (for SOC trend plots).
inline void write_soc_csv(const std::string& path, const DispatchTrace& trace) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << "timestamp,tes_soc,bes_soc\n";
  for (const auto& s : trace.steps)
    out << format_iso_timestamp(s.t) << ',' << repdetail::fixed6(s.tes_soc)
        << ',' << repdetail::fixed6(s.bes_soc) << "\n";
}

/// Demand profiles: cooling load plus baseline and optimized electric draw.
inline void write_demand_csv(const std::string& path,
                             const DispatchTrace& baseline,
                             const DispatchTrace& optimized) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << "timestamp,q_load_kw,baseline_p_total_kw,optimized_p_total_kw\n";
  using repdetail::fixed6;
  const std::size_t n =
      std::min(baseline.steps.size(), optimized.steps.size());
  for (std::size_t i = 0; i < n; ++i)
    out << format_iso_timestamp(optimized.steps[i].t) << ','
        << fixed6(optimized.steps[i].q_load_kw) << ','
        << fixed6(baseline.steps[i].p_total_kw) << ','
        << fixed6(optimized.steps[i].p_total_kw) << "\n";
}

inline nlohmann::json billing_to_json(const BillingResult& b) {
  nlohmann::json peaks = nlohmann::json::object();
  for (const auto& [m, p] : b.peaks_kw) peaks[month_key_to_string(m)] = p;
  return {{"energy_charge", b.energy_charge},
          {"demand_charge", b.demand_charge},
          {"total", b.total},
          {"monthly_peaks_kw", peaks}};
}

inline nlohmann::json sizing_to_json(const SizingResult& s) {
  return {{"status", to_string(s.status)},
          {"base_chiller_kw", s.c_chiller_kw},
          {"tes_chiller_kw", s.c_tes_chiller_kw},
          {"tes_kwh", s.q_tes_kwh},
          {"bes_power_kw", s.p_bes_kw},
          {"bes_kwh", s.c_bes_kwh},
          {"capital", s.capital},
          {"storage_capital", s.storage_capital},
          {"annual_operating", s.annual_operating},
          {"operating_present_value", s.operating_present_value},
          {"total_present_value", s.total_present_value},
          {"present_worth_factor", s.pwf},
          {"lp_iterations", s.iterations}};
}

inline nlohmann::json report_to_json(const RunReport& r) {
  nlohmann::json j{
      {"scenario", r.scenario_id},
      {"baseline", billing_to_json(r.baseline_bill)},
      {"optimized", billing_to_json(r.optimized_bill)},
      {"savings",
       {{"energy_charge", r.saving_energy},
        {"energy_charge_pct", r.saving_energy_pct},
        {"demand_charge", r.saving_demand},
        {"demand_charge_pct", r.saving_demand_pct},
        {"total", r.saving_total},
        {"total_pct", r.saving_total_pct}}},
      {"peak",
       {{"baseline_kw", r.baseline_peak_kw},
        {"optimized_kw", r.optimized_peak_kw},
        {"reduction_kw", r.peak_reduction_kw},
        {"reduction_pct", r.peak_reduction_pct}}},
      {"unmet_cooling_kwh", r.unmet_cooling_kwh},
      {"mismatch_events", r.mismatch_events}};
  if (r.sizing) j["sizing"] = sizing_to_json(*r.sizing);
  return j;
}

inline void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

/// Human-readable sizing summary, one asset per line.
inline std::string sizing_table(const SizingResult& s) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "Asset                 Optimal size\n"
                "Base chiller (kW)     %10.1f\n"
                "TES chiller (kW)      %10.1f\n"
                "TES (kWh)             %10.1f\n"
                "BES power (kW)        %10.1f\n"
                "BES (kWh)             %10.1f\n"
                "Capital ($)           %12.2f\n"
                "Annual operating ($)  %12.2f\n"
                "Present value ($)     %12.2f\n",
                s.c_chiller_kw, s.c_tes_chiller_kw, s.q_tes_kwh, s.p_bes_kw,
                s.c_bes_kwh, s.capital, s.annual_operating,
                s.total_present_value);
  return buf;
}

}  // namespace storplan

#endif  // STORPLAN_REPORT_HPP
