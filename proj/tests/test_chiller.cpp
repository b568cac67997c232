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

#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "storplan/chiller.hpp"

using namespace storplan;

namespace {

// Independent re-evaluation in Horner form, kept deliberately different from
// the implementation's direct-power expansion.
double horner_biquadratic(const double* k, double ts, double tc) {
  return (k[0] + tc * (k[3] + tc * k[4])) + ts * ((k[1] + tc * k[5]) + ts * k[2]);
}
double horner_quadratic(const double* c, double x) {
  return c[0] + x * (c[1] + x * c[2]);
}

}  // namespace

TEST_CASE("constant capacity polynomial") {
  ChillerCurves c;
  c.cap_ft[0] = 1.0;
  for (int i = 1; i < 6; ++i) c.cap_ft[i] = 0.0;
  const CurveValues v = eval_curves(c, OperatingPoint{30.0, -3.0}, 0.3);
  CHECK(v.psi1 == 1.0);
}

TEST_CASE("pure quadratic part-load curve") {
  ChillerCurves c;
  c.eir_plr[0] = 0.0;
  c.eir_plr[1] = 0.0;
  c.eir_plr[2] = 1.0;
  const CurveValues v = eval_curves(c, OperatingPoint{}, 0.5);
  CHECK(v.psi3 == Catch::Approx(0.25).margin(1e-15));
}

TEST_CASE("curve evaluation matches an independent polynomial oracle") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> coeff(-0.05, 0.05);
  std::uniform_real_distribution<double> temp(-10.0, 45.0);
  std::uniform_real_distribution<double> plr(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    ChillerCurves c;
    for (int i = 0; i < 6; ++i) {
      c.cap_ft[i] = coeff(rng);
      c.eir_ft[i] = coeff(rng);
    }
    for (int i = 0; i < 3; ++i) c.eir_plr[i] = coeff(rng);
    const OperatingPoint op{temp(rng), temp(rng)};
    const double r = plr(rng);
    const CurveValues v = eval_curves(c, op, r);
    const double o1 = horner_biquadratic(c.cap_ft, op.t_chw_supply_c, op.t_cond_leaving_c);
    const double o2 = horner_biquadratic(c.eir_ft, op.t_chw_supply_c, op.t_cond_leaving_c);
    const double o3 = horner_quadratic(c.eir_plr, r);
    CHECK(v.psi1 == Catch::Approx(o1).epsilon(1e-12).margin(1e-14));
    CHECK(v.psi2 == Catch::Approx(o2).epsilon(1e-12).margin(1e-14));
    CHECK(v.psi3 == Catch::Approx(o3).epsilon(1e-12).margin(1e-14));
  }
}

TEST_CASE("identity curves reduce power to load over COP") {
  ChillerSpec spec;
  spec.capacity_kw = 100.0;
  spec.cop_ref = 5.0;
  spec.curves = ChillerCurves::identity();
  const ChillerOutput out = chiller_power(spec, OperatingPoint{}, 50.0);
  CHECK(out.p_elec_kw == Catch::Approx(10.0).margin(1e-12));
  CHECK(out.q_avail_kw == Catch::Approx(100.0));
  CHECK(out.plr == Catch::Approx(0.5));
}

TEST_CASE("zero load with zero intercept draws nothing") {
  ChillerSpec spec;
  spec.capacity_kw = 250.0;
  spec.cop_ref = 4.0;
  spec.curves = ChillerCurves::identity();  // eir_plr = (0, 1, 0)
  CHECK(chiller_power(spec, OperatingPoint{}, 0.0).p_elec_kw == 0.0);
}

TEST_CASE("power equals the composed curve formula on random specs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    ChillerSpec spec;
    spec.capacity_kw = 50.0 + 950.0 * uni(rng);
    spec.cop_ref = 2.0 + 5.0 * uni(rng);
    spec.curves = example_centrifugal_curves();
    const OperatingPoint op{4.0 + 6.0 * uni(rng), 20.0 + 20.0 * uni(rng)};
    const CurveValues v = eval_curves(spec.curves, op, 0.0);
    REQUIRE(v.psi1 > 0);
    const double q_load = uni(rng) * spec.capacity_kw * v.psi1;
    const ChillerOutput out = chiller_power(spec, op, q_load);
    // Step-by-step composition oracle.
    const double q_avail = spec.capacity_kw * v.psi1;
    const double plr = q_load / q_avail;
    const CurveValues vp = eval_curves(spec.curves, op, plr);
    const double expect = q_avail * (1.0 / spec.cop_ref) * vp.psi2 * vp.psi3;
    CHECK(out.p_elec_kw == Catch::Approx(expect).epsilon(1e-12).margin(1e-12));
  }
}

TEST_CASE("overload errors carry the deficit") {
  ChillerSpec spec;
  spec.capacity_kw = 100.0;
  spec.cop_ref = 5.0;
  spec.curves = ChillerCurves::identity();
  try {
    chiller_power(spec, OperatingPoint{}, 130.0);
    FAIL("expected CapacityExceededError");
  } catch (const CapacityExceededError& e) {
    CHECK(e.deficit_kw() == Catch::Approx(30.0).margin(1e-9));
  }
}

TEST_CASE("power is nondecreasing in load for convex part-load curves") {
  ChillerSpec spec;
  spec.capacity_kw = 400.0;
  spec.cop_ref = 5.5;
  spec.curves = example_centrifugal_curves();
  REQUIRE(spec.curves.eir_plr[1] >= 0.0);
  REQUIRE(spec.curves.eir_plr[2] >= 0.0);
  const OperatingPoint op{6.67, 29.44};
  double prev = 0.0;
  const double q_avail = chiller_available_capacity(spec, op);
  for (int i = 0; i <= 100; ++i) {
    const double p = chiller_power(spec, op, q_avail * i / 100.0).p_elec_kw;
    CHECK(p >= prev - 1e-9);
    prev = p;
  }
}

TEST_CASE("example curve set is sane at reference conditions") {
  const ChillerCurves c = example_centrifugal_curves();
  const CurveValues v = eval_curves(c, OperatingPoint{6.67, 29.44}, 1.0);
  CHECK(v.psi1 == Catch::Approx(1.0).margin(0.02));
  CHECK(v.psi2 == Catch::Approx(1.0).margin(0.02));
  CHECK(v.psi3 == Catch::Approx(1.0).margin(0.001));
  CHECK(c.plr_curve_convex());
}

TEST_CASE("spec validation") {
  ChillerSpec bad;
  bad.capacity_kw = -1;
  CHECK_THROWS_AS(bad.validate(), InputError);
  bad.capacity_kw = 10;
  bad.cop_ref = 0;
  CHECK_THROWS_AS(bad.validate(), InputError);
  bad.cop_ref = 3;
  bad.min_plr = 1.0;
  CHECK_THROWS_AS(bad.validate(), InputError);
}
