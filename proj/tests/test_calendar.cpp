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

#include <catch2/catch_amalgamated.hpp>

#include "storplan/calendar.hpp"

using namespace storplan;

TEST_CASE("iso timestamps round-trip") {
  const char* samples[] = {"2021-01-01T00:00", "2021-07-15T13:45",
                           "2024-02-29T23:59", "1999-12-31T06:30"};
  for (const char* s : samples) {
    const Timestamp t = parse_iso_timestamp(s);
    CHECK(format_iso_timestamp(t) == s);
  }
  CHECK(parse_iso_timestamp("2021-03-04 05:06") ==
        parse_iso_timestamp("2021-03-04T05:06"));
  CHECK(parse_iso_timestamp("2021-03-04T05:06:07") ==
        parse_iso_timestamp("2021-03-04T05:06") + 7);
}

TEST_CASE("bad timestamps are rejected") {
  CHECK_THROWS_AS(parse_iso_timestamp("not a time"), InputError);
  CHECK_THROWS_AS(parse_iso_timestamp("2021-13-01T00:00"), InputError);
  CHECK_THROWS_AS(parse_iso_timestamp("2021-02-30T00:00"), InputError);
  CHECK_THROWS_AS(parse_iso_timestamp("2021-02-01T25:00"), InputError);
}

TEST_CASE("civil fields and month keys") {
  const Timestamp t = parse_iso_timestamp("2021-07-15T13:45");
  const CivilTime c = civil_from_timestamp(t);
  CHECK(c.year == 2021);
  CHECK(c.month == 7);
  CHECK(c.day == 15);
  CHECK(c.hour == 13);
  CHECK(c.minute == 45);
  CHECK(month_of_year(t) == 7);
  CHECK(month_key_to_string(month_key(t)) == "2021-07");
  CHECK(month_key(parse_iso_timestamp("2021-07-31T23:00")) == month_key(t));
  CHECK(month_key(parse_iso_timestamp("2021-08-01T00:00")) == month_key(t) + 1);
}

TEST_CASE("weekday and hour of day") {
  // 2021-07-15 is a Thursday; 2021-07-17 a Saturday.
  CHECK(weekday_index(parse_iso_timestamp("2021-07-15T00:00")) == 3);
  CHECK_FALSE(is_weekend(parse_iso_timestamp("2021-07-15T12:00")));
  CHECK(is_weekend(parse_iso_timestamp("2021-07-17T12:00")));
  CHECK(is_weekend(parse_iso_timestamp("2021-07-18T12:00")));
  CHECK(hour_of_day(parse_iso_timestamp("2021-07-15T13:30")) ==
        Catch::Approx(13.5));
  CHECK(hour_of_day(parse_iso_timestamp("2021-07-15T00:00")) == 0.0);
}
