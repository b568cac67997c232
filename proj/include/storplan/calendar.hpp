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

#ifndef STORPLAN_CALENDAR_HPP
#define STORPLAN_CALENDAR_HPP

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>

#include "storplan/errors.hpp"

namespace storplan {

/// Timezone-naive local time, seconds since the civil epoch 1970-01-01T00:00.
/// Profiles and tariffs interpret the same local clock; no DST, no offsets.
using Timestamp = std::int64_t;

namespace detail {
inline std::chrono::sys_seconds to_sys(Timestamp t) {
  return std::chrono::sys_seconds{std::chrono::seconds{t}};
}
}  // namespace detail

struct CivilTime {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31
  int hour = 0;
  int minute = 0;
  int second = 0;
};

inline CivilTime civil_from_timestamp(Timestamp t) {
  using namespace std::chrono;
  const auto tp = detail::to_sys(t);
  const auto dp = floor<days>(tp);
  const year_month_day ymd{dp};
  const auto tod = tp - dp;
  const auto h = duration_cast<hours>(tod);
  const auto m = duration_cast<minutes>(tod - h);
  const auto s = duration_cast<seconds>(tod - h - m);
  return CivilTime{int(ymd.year()), int(unsigned(ymd.month())),
                   int(unsigned(ymd.day())), int(h.count()), int(m.count()),
                   int(s.count())};
}

inline Timestamp timestamp_from_civil(const CivilTime& c) {
  using namespace std::chrono;
  const year_month_day ymd{year{c.year}, month{unsigned(c.month)},
                           day{unsigned(c.day)}};
  if (!ymd.ok()) {
    throw InputError("invalid calendar date " + std::to_string(c.year) + "-" +
                     std::to_string(c.month) + "-" + std::to_string(c.day));
  }
  const sys_days dp{ymd};
  return (dp.time_since_epoch() + hours{c.hour} + minutes{c.minute} +
          seconds{c.second})
      .count();
}

/// Calendar month encoded as year*12 + (month-1); ordering matches time.
using MonthKey = std::int32_t;

inline MonthKey month_key(Timestamp t) {
  const auto c = civil_from_timestamp(t);
  return MonthKey(c.year) * 12 + (c.month - 1);
}

inline std::string month_key_to_string(MonthKey m) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", int(m / 12), int(m % 12) + 1);
  return buf;
}

/// 0 = Monday ... 6 = Sunday.
inline int weekday_index(Timestamp t) {
  using namespace std::chrono;
  const auto dp = floor<days>(detail::to_sys(t));
  const weekday wd{dp};
  return int(wd.iso_encoding()) - 1;
}

inline bool is_weekend(Timestamp t) { return weekday_index(t) >= 5; }

/// Fractional hour of day in [0, 24).
inline double hour_of_day(Timestamp t) {
  using namespace std::chrono;
  const auto tp = detail::to_sys(t);
  const auto tod = tp - floor<days>(tp);
  return double(duration_cast<seconds>(tod).count()) / 3600.0;
}

inline int month_of_year(Timestamp t) { return civil_from_timestamp(t).month; }

/// Parses "YYYY-MM-DD[ T]HH:MM[:SS]". Seconds optional.
inline Timestamp parse_iso_timestamp(const std::string& s) {
  CivilTime c;
  int n = 0;
  int got = std::sscanf(s.c_str(), "%d-%d-%d%*1[T ]%d:%d:%d%n", &c.year,
                        &c.month, &c.day, &c.hour, &c.minute, &c.second, &n);
  if (got < 5) {
    throw InputError("unparseable timestamp '" + s + "'");
  }
  if (got == 5) c.second = 0;
  if (c.hour < 0 || c.hour > 23 || c.minute < 0 || c.minute > 59 ||
      c.second < 0 || c.second > 59) {
    throw InputError("out-of-range time of day in '" + s + "'");
  }
  return timestamp_from_civil(c);
}

inline std::string format_iso_timestamp(Timestamp t) {
  const auto c = civil_from_timestamp(t);
  char buf[32];
  if (c.second == 0) {
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d", c.year,
                  c.month, c.day, c.hour, c.minute);
  } else {
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d", c.year,
                  c.month, c.day, c.hour, c.minute, c.second);
  }
  return buf;
}

}  // namespace storplan

#endif  // STORPLAN_CALENDAR_HPP
