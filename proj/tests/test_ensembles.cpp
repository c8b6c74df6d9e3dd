// Copyright 2026 The qdarwin Authors.
//
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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/chernoff.hpp"
#include "core/ensembles.hpp"
#include "core/errors.hpp"

using namespace qdarwin;
using doctest::Approx;

TEST_CASE("haziness inversion") {
  CHECK(haziness_to_bloch_length(0.0) == 1.0);
  CHECK(haziness_to_bloch_length(0.2) == Approx(0.9377510793904213).epsilon(1e-13));
  CHECK(haziness_to_bloch_length(0.4) == Approx(0.8412347990387019).epsilon(1e-13));
  CHECK(haziness_to_bloch_length(0.6) == Approx(0.7077951931762262).epsilon(1e-13));
  CHECK(haziness_to_bloch_length(0.8) == Approx(0.5139922923820922).epsilon(1e-13));
  CHECK(haziness_to_bloch_length(1.0 - 1e-9) < 1e-3);
  for (double h : {0.05, 0.33, 0.9})
    CHECK(binary_entropy(0.5 * (1 + haziness_to_bloch_length(h))) == Approx(h).epsilon(1e-12));
  CHECK_THROWS_AS(haziness_to_bloch_length(1.0), Error);
  CHECK_THROWS_AS(haziness_to_bloch_length(-0.1), Error);
}

TEST_CASE("band average") {
  const BandSpec band{1.0, 1.0, kPi / 2};
  CHECK(band_mean_overlap(band, 0.0) == 1.0);
  CHECK(band_mean_deficit(band, 0.0) == 0.0);
  CHECK(band_mean_overlap(band, 1e4) == Approx(0.5).epsilon(1e-4));
  // Direct evaluation of 1 - (1/2)(1 - sin(8)/8) at W = 1, t = 2.
  CHECK(band_mean_overlap(band, 2.0) == Approx(1 - 0.5 * (1 - std::sin(8.0) / 8.0)).epsilon(1e-14));
  // Small-t series matches the exact expression where both are accurate.
  const double t = 2e-3;
  const double x = 4 * t;
  const double exact = 0.5 * (1 - std::sin(x) / x);
  CHECK(band_mean_deficit(band, t) == Approx(exact).epsilon(1e-8));
  CHECK(band_mean_deficit(band, 1e-9) == Approx(16e-18 / 6).epsilon(1e-10));
}

TEST_CASE("band redundancy") {
  const BandSpec band{1.0, 1.0, kPi / 2};
  const double ref = band_redundancy(band, 32, 0.001, 0.1).r_delta / 1e-6;
  for (double t : {0.005, 0.01, 0.03, 0.05})
    CHECK(band_redundancy(band, 32, t, 0.1).r_delta / (t * t) == Approx(ref).epsilon(0.01));
  CHECK(band_gaussian(band, 32, 0.01, 0.1) == Approx(band_redundancy(band, 32, 0.01, 0.1).r_delta).epsilon(1e-3));
  CHECK(band_asymptote(band, 32, 0.1) == Approx(-32 * std::log(0.5) / std::log(10.0)));
  double lo = 1e300, hi = 0;
  for (double t = 50; t < 60; t += 0.01) {
    const double r = band_redundancy(band, 32, t, 0.1).r_delta;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(lo < band_asymptote(band, 32, 0.1));
  CHECK(hi > band_asymptote(band, 32, 0.1));
  const BandSpec dead{1.0, 0.0, kPi / 2};
  for (double t : {0.0, 1.0, 5.0}) CHECK(band_redundancy(dead, 32, t, 0.1).r_delta == 0.0);
}

TEST_CASE("linspace") {
  const auto v = linspace(0, 20, 81);
  REQUIRE(v.size() == 81);
  CHECK(v.front() == 0.0);
  CHECK(v.back() == 20.0);
  CHECK(v[4] == Approx(1.0));
  CHECK(linspace(3, 3, 1) == std::vector<double>{3.0});
}

TEST_CASE("scenario builders") {
  const Scenario f3 = make_fig3_scenario(10000, 7);
  CHECK_NOTHROW(validate(f3));
  CHECK(f3.delta == 1e-16);
  const auto env = realize_environment(f3.environment);
  CHECK(decoherence_time(env) == Approx(std::sqrt(3.0) / 4).epsilon(0.02));
  CHECK(onset_time(std::sqrt(3.0) / 4, f3.delta) == Approx(3.717).epsilon(1e-3));
  CHECK(realize_environment(make_fig3_scenario(10000, 7).environment) == env);

  // Relative efficiency at h = 0 is (t / (pi/8))^2 on the quadratic branch.
  const auto xi_of = [](double h, double p, double t) {
    const Scenario s = make_fig4_scenario(h, p, t);
    return xi_bar_closed(realize_environment(s.environment), t);
  };
  const double ref = xi_of(0.0, 0.5, kPi / 8);
  CHECK(xi_of(0.0, 0.5, kPi / 16) / ref == Approx(0.25).epsilon(1e-3));
  double prev = 2.0;
  for (double h : {0.0, 0.2, 0.4, 0.6, 0.8}) {
    const double rel = xi_of(h, 0.5, 0.5) / ref;
    CHECK(rel < prev);
    prev = rel;
    CHECK(xi_of(h, 0.125, 0.5) == xi_of(h, 0.5, 0.5));
    CHECK(xi_of(h, 1.0 / 32, 0.5) == xi_of(h, 0.5, 0.5));
  }

  const Scenario f5 = make_fig5_scenario();
  CHECK_NOTHROW(validate(f5));
  CHECK(f5.environment.count() == 32);
  CHECK(f5.times.size() == 100);
  const auto e5 = realize_environment(f5.environment);
  CHECK(e5 == realize_environment(make_fig5_scenario().environment));
  for (const auto& s : e5) {
    CHECK(s.g >= 0.0);
    CHECK(s.g <= 1.0);
  }
  for (double t : f5.times) {
    const double r = redundancy_discretized(e5, t > 0 ? t : 1e-3, 0.1).r_delta;
    const double f = 32.0 / r;
    CHECK(f == Approx(std::round(f)));
  }
}
