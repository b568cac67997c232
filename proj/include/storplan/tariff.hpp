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

#ifndef STORPLAN_TARIFF_HPP
#define STORPLAN_TARIFF_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "storplan/calendar.hpp"
#include "storplan/errors.hpp"

namespace storplan {

/// Which days of the week a tariff period covers.
enum class DayKind { kAll, kWeekday, kWeekend };

inline std::string day_kind_to_string(DayKind d) {
  switch (d) {
    case DayKind::kWeekday: return "weekday";
    case DayKind::kWeekend: return "weekend";
    default: return "all";
  }
}

/// One named block of the energy-price schedule. Hours are half-open
/// [start_hour, end_hour); months are 1..12; an empty month list means all
/// year. Periods are matched in declaration order, first match wins.
struct TariffPeriod {
  std::string name;
  std::vector<int> months;  // empty = all months
  DayKind days = DayKind::kAll;
  double start_hour = 0.0;
  double end_hour = 24.0;
  double price_per_kwh = 0.0;

  bool matches(Timestamp t) const {
    if (!months.empty()) {
      const int m = month_of_year(t);
      bool found = false;
      for (int mm : months) found = found || (mm == m);
      if (!found) return false;
    }
    if (days == DayKind::kWeekday && is_weekend(t)) return false;
    if (days == DayKind::kWeekend && !is_weekend(t)) return false;
    const double h = hour_of_day(t);
    return h >= start_hour && h < end_hour;
  }
};

/// Time-of-use (or flat) energy prices plus monthly demand rates.
struct Tariff {
  std::string name;
  std::vector<TariffPeriod> periods;
  /// Price applied when no period matches; unset means a gap is an error.
  std::optional<double> default_price_per_kwh;
  /// Demand rate by month of year (1..12); missing months fall back to
  /// default_demand_rate.
  std::map<int, double> demand_rate_per_kw;
  double default_demand_rate_per_kw = 0.0;

  static Tariff flat(double price_per_kwh, double demand_rate = 0.0) {
    Tariff t;
    t.name = "flat";
    t.default_price_per_kwh = price_per_kwh;
    t.default_demand_rate_per_kw = demand_rate;
    return t;
  }

  void validate() const {
    if (default_price_per_kwh && *default_price_per_kwh < 0)
      throw InputError("tariff: default energy price must be >= 0");
    for (const auto& p : periods) {
      if (p.price_per_kwh < 0)
        throw InputError("tariff period '" + p.name + "': price must be >= 0");
      if (!(p.start_hour >= 0 && p.end_hour <= 24 && p.start_hour < p.end_hour))
        throw InputError("tariff period '" + p.name +
                         "': need 0 <= start < end <= 24");
      for (int m : p.months)
        if (m < 1 || m > 12)
          throw InputError("tariff period '" + p.name + "': month out of range");
    }
    if (default_demand_rate_per_kw < 0)
      throw InputError("tariff: demand rate must be >= 0");
    for (const auto& [m, r] : demand_rate_per_kw) {
      if (m < 1 || m > 12) throw InputError("tariff: demand month out of range");
      if (r < 0) throw InputError("tariff: demand rate must be >= 0");
    }
  }
};

/// Energy price at a timestamp, $/kWh. Throws TariffCoverageError when no
/// period matches and no default price exists.
inline double price_at(const Tariff& tariff, Timestamp t) {
  for (const auto& p : tariff.periods) {
    if (p.matches(t)) return p.price_per_kwh;
  }
  if (tariff.default_price_per_kwh) return *tariff.default_price_per_kwh;
  throw TariffCoverageError("tariff '" + tariff.name +
                            "' does not cover timestamp " +
                            format_iso_timestamp(t));
}

/// Demand rate for a calendar month, $/kW.
inline double demand_rate_at(const Tariff& tariff, MonthKey m) {
  const int month = int(m % 12) + 1;
  auto it = tariff.demand_rate_per_kw.find(month);
  if (it != tariff.demand_rate_per_kw.end()) return it->second;
  return tariff.default_demand_rate_per_kw;
}

/// Decomposed bill: energy charge, demand charge and the per-month peaks
/// the demand charge is based on.
struct BillingResult {
  double energy_charge = 0.0;
  double demand_charge = 0.0;
  std::map<MonthKey, double> peaks_kw;
  double total = 0.0;
};

/// Bills a uniform power series: energy = sum(price * P * dt); each calendar
/// month is charged its demand rate times the month's maximum power.
/// Partial months are billed on their actual peak.
inline BillingResult compute_bill(const Tariff& tariff, Timestamp start,
                                  const std::vector<double>& p_total_kw,
                                  double dt_h) {
  if (p_total_kw.empty()) throw InputError("compute_bill: empty power series");
  if (dt_h <= 0) throw InputError("compute_bill: dt must be > 0");
  BillingResult bill;
  const auto dt_s = Timestamp(dt_h * 3600.0 + 0.5);
  for (std::size_t i = 0; i < p_total_kw.size(); ++i) {
    const Timestamp t = start + Timestamp(i) * dt_s;
    bill.energy_charge += price_at(tariff, t) * p_total_kw[i] * dt_h;
    const MonthKey m = month_key(t);
    auto [it, fresh] = bill.peaks_kw.try_emplace(m, 0.0);
    it->second = std::max(it->second, p_total_kw[i]);
  }
  for (const auto& [m, peak] : bill.peaks_kw)
    bill.demand_charge += demand_rate_at(tariff, m) * peak;
  bill.total = bill.energy_charge + bill.demand_charge;
  return bill;
}

}  // namespace storplan

#endif  // STORPLAN_TARIFF_HPP
