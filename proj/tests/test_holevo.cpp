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

#include "core/dynamics.hpp"
#include "core/ensembles.hpp"
#include "core/errors.hpp"
#include "core/holevo.hpp"

using namespace qdarwin;
using doctest::Approx;

namespace {

const double kT = 15 * kPi / 64;

FragmentSelection first(std::size_t n) {
  FragmentSelection f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = i;
  return f;
}

SystemSpec sys(double p) {
  SystemSpec s;
  s.p_up = p;
  return s;
}

HolevoOptions opts(Averaging a, std::size_t samples = 10000, std::uint64_t seed = 1) {
  HolevoOptions o;
  o.averaging = a;
  o.samples = samples;
  o.seed = seed;
  return o;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("system entropy") {
  CHECK(system_entropy(sys(0.5)) == Approx(1.0));
  CHECK(system_entropy(sys(0.125)) == Approx(0.5435644431995964).epsilon(1e-13));
  CHECK(system_entropy(sys(1e-12)) < 1e-10);
}

TEST_CASE("closed-form pure Holevo") {
  CHECK(holevo_pure_closed(sys(0.5), Complex(1, 0)) == Approx(0.0));
  CHECK(holevo_pure_closed(sys(0.5), Complex(0, 0)) == Approx(1.0));
  CHECK(holevo_pure_closed(sys(0.5), std::sqrt(0.5)) == Approx(0.6008760366928562).epsilon(1e-13));

  const SpinSpec s{0.5, 0.0, QubitState::pure(kPi / 2, 0)};
  const std::vector<SpinSpec> env{s};
  CHECK(holevo_dense(sys(0.5), env, first(1), kT) ==
        Approx(holevo_pure_closed(sys(0.5), decoherence_factor_spin(s, kT))).epsilon(1e-12));

  const std::vector<SpinSpec> mixed{SpinSpec{0.5, 0.0, QubitState::make(0.5, 1.0, 0.0)}};
  CHECK(kind_of([&] { holevo_pure_closed(sys(0.5), mixed, first(1), kT); }) == ErrorKind::MixedEnvironment);
}

TEST_CASE("deficit evaluator keeps precision far below epsilon") {
  for (double p : {0.5, 0.125, 1.0 / 32}) {
    const PureChiEvaluator ev(sys(p));
    CHECK(ev(1.0).chi == Approx(0.0));
    CHECK(ev(0.0).deficit == Approx(0.0));
    // Long-double direct evaluation, where it still resolves the deficit.
    for (double y : {1e-3, 1e-8, 1e-14, 1e-20}) {
      const long double q = static_cast<long double>(p) * (1 - p);
      const long double r0 = std::abs(static_cast<long double>(p) - 0.5L);
      const long double r = std::sqrt(r0 * r0 + q * y);
      const long double mm = q * (1 - y) / (0.5L + r);
      const long double hs = -(p * std::log2((long double)p) + (1 - p) * std::log2((long double)(1 - p)));
      const long double chi = -(mm * std::log2(mm) + (1 - mm) * std::log2(1 - mm));
      if (y >= 1e-8) CHECK(static_cast<double>(hs - chi) == Approx(ev(y).deficit).epsilon(1e-6));
      CHECK(ev(y).deficit > 0.0);
    }
    // The deficit scales linearly in y as y -> 0.
    CHECK(ev(1e-20).deficit / ev(1e-19).deficit == Approx(0.1).epsilon(1e-6));
  }
}

TEST_CASE("dense Holevo edge cases") {
  const std::vector<SpinSpec> env{
      SpinSpec{0.5, 0.3, QubitState::make(0.0, 1.0, 0.0)},
      SpinSpec{0.9, 0.0, QubitState::make(0.0, 2.0, 1.0)}};
  CHECK(holevo_dense(sys(0.5), env, first(2), 3.0) == Approx(0.0).epsilon(1e-12));
  const std::vector<SpinSpec> live{SpinSpec{0.5, 0.3, QubitState::make(0.6, 1.0, 0.0)},
                                   SpinSpec{0.9, 0.0, QubitState::pure(2.0, 1.0)}};
  CHECK(std::abs(holevo_dense(sys(0.3), live, first(2), 0.0)) < 1e-12);
  std::vector<SpinSpec> big(15, live[0]);
  CHECK(kind_of([&] { holevo_dense(sys(0.5), big, first(13), 1.0); }) == ErrorKind::TooLarge);
  CHECK(kind_of([&] { holevo_dense(sys(0.5), live, {1, 0}, 1.0); }) == ErrorKind::BadArgument);
  CHECK(kind_of([&] { holevo_dense(sys(0.5), live, {0, 2}, 1.0); }) == ErrorKind::BadArgument);
}

TEST_CASE("mutual information decomposition") {
  const std::vector<SpinSpec> env(6, SpinSpec{0.7, 0.0, QubitState::pure(kPi / 2, 0)});
  const auto zero = mutual_information_pure(sys(0.5), env, first(3), 0.0);
  CHECK(zero.total == Approx(0.0));
  // Far into decoherence a small fragment sees the classical plateau of one bit.
  const double t = kPi / 4 / 0.7;  // |gamma_k| = 0
  CHECK(mutual_information_pure(sys(0.5), env, first(2), t).total == Approx(1.0));
  CHECK(mutual_information_pure(sys(0.5), env, first(6), t).total == Approx(2.0));
  // I(F) + I(E \ F) = 2 H_SdE for pure global states.
  const double t2 = 0.4;
  const auto f = mutual_information_pure(sys(0.5), env, first(2), t2);
  const auto rest = mutual_information_pure(sys(0.5), env, {2, 3, 4, 5}, t2);
  const auto all = mutual_information_pure(sys(0.5), env, first(6), t2);
  CHECK(f.total + rest.total == Approx(all.total));
  SystemSpec mixed = sys(0.5);
  mixed.coherence = 0.2;
  CHECK(kind_of([&] { mutual_information_pure(mixed, env, first(2), t2); }) == ErrorKind::MixedSystem);
}

TEST_CASE("choose") {
  CHECK(choose(32, 2) == 496);
  CHECK(choose(32, 16) == 601080390);
  CHECK(choose(5, 7) == 0);
  CHECK(choose(1000, 500) == UINT64_MAX);
}

TEST_CASE("fragment averages") {
  const Scenario sc = make_fig5_scenario(32, 0.1, 5);
  const auto env = realize_environment(sc.environment);
  const double t = 3.0;
  const auto whole = average_holevo(sc.system, env, 32, t, opts(Averaging::MonteCarlo));
  CHECK(whole.stderr_chi == 0.0);
  CHECK(whole.n_samples == 1);

  const auto exact = average_holevo(sc.system, env, 2, t, opts(Averaging::Enumerate));
  CHECK(exact.mode == HolevoMode::Enumerated);
  CHECK(exact.n_samples == 496);
  const auto mc = average_holevo(sc.system, env, 2, t, opts(Averaging::MonteCarlo, 100000, 3));
  CHECK(mc.mode == HolevoMode::MonteCarlo);
  CHECK(std::abs(mc.mean_chi - exact.mean_chi) < 3 * mc.stderr_chi);

  const std::vector<SpinSpec> sym(20, env[3]);
  const auto s1 = average_holevo(sc.system, sym, 4, t, opts(Averaging::Enumerate));
  CHECK(s1.mean_chi == Approx(holevo_pure_closed(sc.system, sym, first(4), t)).epsilon(1e-13));

  HolevoOptions tight = opts(Averaging::Enumerate);
  tight.max_subsets = 100;
  CHECK(kind_of([&] { average_holevo(sc.system, env, 3, t, tight); }) == ErrorKind::TooManySubsets);

  // Mixed spins route through the dense path, capped by dense_cap.
  std::vector<SpinSpec> hazy(env.begin(), env.begin() + 6);
  for (auto& s : hazy) s.init = QubitState::make(0.8, s.init.theta(), s.init.phi());
  HolevoOptions capped = opts(Averaging::Enumerate);
  capped.dense_cap = 2;
  CHECK(kind_of([&] { average_holevo(sc.system, hazy, 3, t, capped); }) == ErrorKind::TooLarge);
  capped.dense_cap = 3;
  CHECK(average_holevo(sc.system, hazy, 3, t, capped).mean_chi > 0.0);
}

TEST_CASE("averages do not depend on the worker count") {
  const Scenario sc = make_fig3_scenario(400, 7);
  const auto env = realize_environment(sc.environment);
  HolevoOptions o = opts(Averaging::MonteCarlo, 5000, 9);
  o.threads = 1;
  const auto a = average_holevo(sc.system, env, 37, 8.0, o);
  o.threads = 5;
  const auto b = average_holevo(sc.system, env, 37, 8.0, o);
  CHECK(a.mean_chi == b.mean_chi);
  CHECK(a.mean_deficit == b.mean_deficit);
  CHECK(a.stderr_chi == b.stderr_chi);

  const auto small = make_fig5_scenario(24, 0.1, 2);
  const auto e2 = realize_environment(small.environment);
  HolevoOptions en = opts(Averaging::Enumerate);
  en.threads = 1;
  const auto c = average_holevo(small.system, e2, 5, 2.0, en);
  en.threads = 6;
  CHECK(average_holevo(small.system, e2, 5, 2.0, en).mean_deficit == c.mean_deficit);
}

TEST_CASE("fragment size search") {
  // Symmetric pure environment: compare with a brute scalar scan.
  const SpinSpec s{0.3, 0.0, QubitState::pure(kPi / 2, 0)};
  const std::vector<SpinSpec> env(50, s);
  for (double delta : {0.3, 0.1, 1e-3, 1e-8}) {
    for (double t : {0.5, 1.0, 2.0}) {
      const PureChiEvaluator ev(sys(0.5));
      const double y1 = decoherence_sq_spin(s, t);
      std::size_t brute = 0;
      for (std::size_t f = 1; f <= 50; ++f) {
        if (ev(std::pow(y1, static_cast<double>(f))).deficit <= delta * ev.system_entropy()) {
          brute = f;
          break;
        }
      }
      const auto found = find_fragment_size(sys(0.5), env, t, delta, opts(Averaging::Auto));
      if (brute == 0) {
        CHECK_FALSE(found.reached);
      } else {
        CHECK(found.reached);
        CHECK(found.f_delta == brute);
      }
    }
  }

  // A delta close to one is met by any informative spin.
  const Scenario sc = make_fig5_scenario(32, 0.1, 5);
  const auto e5 = realize_environment(sc.environment);
  CHECK(find_fragment_size(sc.system, e5, 2.0, 0.99, opts(Averaging::Enumerate)).f_delta == 1);

  // Spins on the z axis never record anything.
  const std::vector<SpinSpec> blind(8, SpinSpec{0.5, 0.0, QubitState::pure(0, 0)});
  const auto none = find_fragment_size(sys(0.5), blind, 3.0, 0.1, opts(Averaging::Auto));
  CHECK_FALSE(none.reached);
  const auto r = redundancy_exact(sys(0.5), blind, 3.0, 0.1, opts(Averaging::Auto));
  CHECK(r.r_delta == 0.0);
  CHECK_FALSE(r.reached);
}

TEST_CASE("exact redundancy") {
  // Two perfectly decohering spins of 32 give R = 16 when one spin falls short.
  const double t = 0.9;
  const SpinSpec s{1.0, 0.0, QubitState::pure(kPi / 2, 0)};
  const std::vector<SpinSpec> env(32, s);
  const PureChiEvaluator ev(sys(0.5));
  const double y = decoherence_sq_spin(s, t);
  const double d1 = ev(y).deficit, d2 = ev(y * y).deficit;
  REQUIRE(d2 < d1);
  const double delta = std::sqrt(d1 * d2);
  const auto r = redundancy_exact(sys(0.5), env, t, delta, opts(Averaging::Auto));
  CHECK(r.f_delta == 2.0);
  CHECK(r.r_delta == 16.0);

  // Shrinking delta never increases R.
  const Scenario sc = make_fig5_scenario(32, 0.1, 5);
  const auto e5 = realize_environment(sc.environment);
  double prev = 1e300;
  for (double d : {0.4, 0.2, 0.1, 0.05, 0.01, 1e-3}) {
    const double rd = redundancy_exact(sc.system, e5, 4.0, d, opts(Averaging::MonteCarlo, 2000)).r_delta;
    CHECK(rd <= prev);
    prev = rd;
  }
  CHECK(resolve_averaging(32, opts(Averaging::Auto)) == Averaging::MonteCarlo);
  CHECK(resolve_averaging(20, opts(Averaging::Auto)) == Averaging::Enumerate);
}
