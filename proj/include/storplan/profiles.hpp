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

#ifndef STORPLAN_PROFILES_HPP
#define STORPLAN_PROFILES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "storplan/calendar.hpp"
#include "storplan/errors.hpp"

namespace storplan {

/// Uniformly spaced cooling / non-flexible-electric / outdoor-air series.
/// All loading paths funnel through validate(), the single gate into the
/// engine.
struct ProfileSet {
  Timestamp start = 0;
  double dt_h = 1.0;
  std::vector<double> cooling_kw;
  std::vector<double> electric_kw;  // non-flexible share
  std::vector<double> oat_c;

  int size() const { return int(cooling_kw.size()); }
  Timestamp timestamp_at(int i) const {
    return start + Timestamp(i) * Timestamp(dt_h * 3600.0 + 0.5);
  }
  double span_hours() const { return dt_h * size(); }

  void validate() const {
    if (cooling_kw.empty()) throw InputError("profile: empty series");
    if (cooling_kw.size() != electric_kw.size() ||
        cooling_kw.size() != oat_c.size())
      throw InputError("profile: series lengths differ");
    if (dt_h <= 0) throw InputError("profile: dt must be > 0");
    for (std::size_t i = 0; i < cooling_kw.size(); ++i) {
      if (!std::isfinite(cooling_kw[i]) || !std::isfinite(electric_kw[i]) ||
          !std::isfinite(oat_c[i]))
        throw InputError("profile: non-finite value at row " +
                         std::to_string(i + 1));
      if (cooling_kw[i] < 0 || electric_kw[i] < 0)
        throw InputError("profile: negative load at row " +
                         std::to_string(i + 1));
    }
  }
};

inline constexpr const char* kProfileCsvHeader =
    "timestamp,cooling_kw,electric_nonflex_kw,oat_c";

/// Loads the fixed-schema profile CSV. Errors carry the offending data row
/// number (header = row 1).
inline ProfileSet load_profiles_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open profile file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw InputError("profile '" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kProfileCsvHeader)
    throw InputError("profile '" + path + "': header must be exactly '" +
                     std::string(kProfileCsvHeader) + "'");
  ProfileSet p;
  std::vector<Timestamp> stamps;
  int rownum = 1;
  while (std::getline(in, line)) {
    ++rownum;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string ts, c, e, o;
    if (!std::getline(ss, ts, ',') || !std::getline(ss, c, ',') ||
        !std::getline(ss, e, ',') || !std::getline(ss, o, ','))
      throw InputError("profile row " + std::to_string(rownum) +
                       ": expected 4 comma-separated fields");
    auto to_num = [&](const std::string& s, const char* what) {
      std::size_t pos = 0;
      double v = 0;
      try {
        v = std::stod(s, &pos);
      } catch (const std::exception&) {
        throw InputError("profile row " + std::to_string(rownum) + ": bad " +
                         what + " value '" + s + "'");
      }
      while (pos < s.size() && std::isspace(s[pos])) ++pos;
      if (pos != s.size())
        throw InputError("profile row " + std::to_string(rownum) + ": bad " +
                         what + " value '" + s + "'");
      return v;
    };
    Timestamp stamp;
    try {
      stamp = parse_iso_timestamp(ts);
    } catch (const InputError& e2) {
      throw InputError("profile row " + std::to_string(rownum) + ": " +
                       e2.what());
    }
    stamps.push_back(stamp);
    p.cooling_kw.push_back(to_num(c, "cooling_kw"));
    p.electric_kw.push_back(to_num(e, "electric_nonflex_kw"));
    p.oat_c.push_back(to_num(o, "oat_c"));
    if (p.cooling_kw.back() < 0 || p.electric_kw.back() < 0)
      throw InputError("profile row " + std::to_string(rownum) +
                       ": negative load");
  }
  if (stamps.empty()) throw InputError("profile '" + path + "' has no data rows");
  p.start = stamps.front();
  if (stamps.size() == 1) {
    p.dt_h = 1.0;
  } else {
    const Timestamp step = stamps[1] - stamps[0];
    if (step <= 0)
      throw InputError(stamps[1] == stamps[0]
                           ? "profile row 3: duplicate timestamp"
                           : "profile row 3: timestamps must increase");
    for (std::size_t i = 1; i < stamps.size(); ++i) {
      const Timestamp got = stamps[i] - stamps[i - 1];
      if (got == 0)
        throw InputError("profile row " + std::to_string(i + 2) +
                         ": duplicate timestamp");
      if (got != step)
        throw InputError("profile row " + std::to_string(i + 2) +
                         ": gap or irregular spacing (expected " +
                         std::to_string(step) + " s, got " +
                         std::to_string(got) + " s)");
    }
    p.dt_h = double(step) / 3600.0;
  }
  p.validate();
  return p;
}

/// Writes the same fixed schema with round-trip-exact numbers.
inline void write_profiles_csv(const ProfileSet& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write profile file '" + path + "'");
  out << kProfileCsvHeader << "\n";
  char buf[128];
  for (int i = 0; i < p.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g",
                  format_iso_timestamp(p.timestamp_at(i)).c_str(),
                  p.cooling_kw[std::size_t(i)], p.electric_kw[std::size_t(i)],
                  p.oat_c[std::size_t(i)]);
    out << buf << "\n";
  }
}

enum class ClimateShape { kMild, kCold, kHot };

inline ClimateShape climate_shape_from_string(const std::string& s) {
  if (s == "mild") return ClimateShape::kMild;
  if (s == "cold") return ClimateShape::kCold;
  if (s == "hot") return ClimateShape::kHot;
  throw InputError("unknown climate shape '" + s + "' (mild|cold|hot)");
}

struct SynthTemplate {
  double peak_cooling_kw = 1000.0;
  double peak_electric_kw = 800.0;
  ClimateShape climate = ClimateShape::kMild;
  int year = 2021;
  int days = 365;
  double dt_h = 1.0;
};

/// Deterministic-by-seed synthetic year: a seasonal envelope times a diurnal
/// office shape with weekday/weekend modulation plus seeded smooth day-to-day
/// variation, rescaled so the annual maxima hit the requested peaks exactly.
inline ProfileSet synth_profiles(std::uint64_t seed, const SynthTemplate& tpl) {
  if (!(tpl.peak_cooling_kw > 0) || !(tpl.peak_electric_kw > 0))
    throw InputError("synthetic profile peaks must be > 0");
  if (tpl.days < 1 || tpl.dt_h <= 0)
    throw InputError("synthetic profile span must be positive");

  struct Shape {
    double floor, width, peak_doy, oat_mean, oat_amp, oat_diurnal;
  };
  Shape sh;
  switch (tpl.climate) {
    case ClimateShape::kMild: sh = {0.32, 95.0, 200.0, 15.0, 8.0, 6.0}; break;
    case ClimateShape::kCold: sh = {0.06, 55.0, 200.0, 9.0, 14.0, 8.0}; break;
    case ClimateShape::kHot: sh = {0.28, 110.0, 205.0, 20.0, 11.0, 9.0}; break;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> day_noise(std::size_t(tpl.days) + 1);
  for (auto& v : day_noise) v = uni(rng);
  // Two-point smoothing keeps consecutive days correlated.
  for (std::size_t i = 1; i < day_noise.size(); ++i)
    day_noise[i] = 0.6 * day_noise[i - 1] + 0.4 * day_noise[i];

  ProfileSet p;
  p.dt_h = tpl.dt_h;
  p.start = timestamp_from_civil(CivilTime{tpl.year, 1, 1, 0, 0, 0});
  const int steps_per_day = std::max(1, int(std::lround(24.0 / tpl.dt_h)));
  const int n = tpl.days * steps_per_day;
  p.cooling_kw.resize(std::size_t(n));
  p.electric_kw.resize(std::size_t(n));
  p.oat_c.resize(std::size_t(n));

  const double pi = 3.14159265358979323846;
  for (int i = 0; i < n; ++i) {
    const int day = i / steps_per_day;
    const double hour = (i % steps_per_day) * tpl.dt_h;
    const Timestamp t = p.timestamp_at(i);
    const bool weekend = is_weekend(t);
    const double season =
        sh.floor + (1.0 - sh.floor) *
                       std::exp(-std::pow((day - sh.peak_doy) / sh.width, 2));
    const double occup = weekend ? 0.55 : 1.0;
    const double diurnal_c =
        0.25 + 0.75 * std::pow(std::max(0.0, std::cos((hour - 15.0) * pi / 12.0)),
                               1.2);
    const double diurnal_e =
        0.35 + 0.65 * std::pow(std::max(0.0, std::cos((hour - 14.0) * pi / 12.0)),
                               1.0);
    const double wiggle = 1.0 + 0.06 * day_noise[std::size_t(day)];
    p.cooling_kw[std::size_t(i)] =
        std::max(0.0, season * diurnal_c * occup * wiggle);
    p.electric_kw[std::size_t(i)] =
        std::max(0.0, (0.30 + 0.70 * diurnal_e * occup) *
                          (0.80 + 0.20 * season) * wiggle);
    p.oat_c[std::size_t(i)] =
        sh.oat_mean +
        sh.oat_amp * std::sin(2.0 * pi * (day - 110.0) / 365.0) +
        sh.oat_diurnal * 0.5 * std::sin((hour - 9.0) * pi / 12.0) +
        1.5 * day_noise[std::size_t(day)];
  }
  const double cmax = *std::max_element(p.cooling_kw.begin(), p.cooling_kw.end());
  const double emax = *std::max_element(p.electric_kw.begin(), p.electric_kw.end());
  for (auto& v : p.cooling_kw) v *= tpl.peak_cooling_kw / cmax;
  for (auto& v : p.electric_kw) v *= tpl.peak_electric_kw / emax;
  p.validate();
  return p;
}

}  // namespace storplan

#endif  // STORPLAN_PROFILES_HPP
