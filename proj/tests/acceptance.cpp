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

// Acceptance run: one PASS/FAIL line per criterion, each with its measured
// figures and wall time. Pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "core/chernoff.hpp"
#include "core/dynamics.hpp"
#include "core/ensembles.hpp"
#include "core/holevo.hpp"
#include "core/model.hpp"
#include "support.hpp"

using namespace qdarwin;
using qdarwin::testing::Gen;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

FragmentSelection first(std::size_t n) {
  FragmentSelection f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = i;
  return f;
}

double mean_g2(const std::vector<SpinSpec>& env) {
  double s = 0;
  for (const auto& k : env) s += k.g * k.g;
  return s / static_cast<double>(env.size());
}

// Mean of prod_{k in F} y_k over all subsets of size f, by the recurrence on
// normalised elementary symmetric polynomials.
double subset_product_mean(const std::vector<double>& y, std::size_t f) {
  std::vector<double> a(f + 1, 0.0);
  a[0] = 1.0;
  for (std::size_t m = 1; m <= y.size(); ++m) {
    const double dm = static_cast<double>(m);
    for (std::size_t j = std::min(m, f); j >= 1; --j) {
      const double dj = static_cast<double>(j);
      a[j] = (dm - dj) / dm * a[j] + dj / dm * y[m - 1] * a[j - 1];
    }
  }
  return a[f];
}

// 1. Realised decoherence time of the Gaussian scenario.
Outcome tau_d() {
  const Scenario sc = make_fig3_scenario(10000, 7);
  const double tau = decoherence_time(realize_environment(sc.environment));
  const double ref = std::sqrt(3.0) / 4;
  const double err = std::abs(tau / ref - 1);
  return {err <= 0.02, fmt("tau_D = %.6f vs sqrt(3)/4 = %.6f, rel err %.3f%% (limit 2%%)", tau, ref, 100 * err)};
}

// 2. Exact redundancy against the quadratic law, and the onset crossing.
Outcome quadratic_onset() {
  const Scenario sc = make_fig3_scenario(10000, 7);
  const auto env = realize_environment(sc.environment);
  const std::size_t n = env.size();
  HolevoOptions o;
  o.averaging = Averaging::MonteCarlo;
  o.samples = 10000;
  o.seed = 7;
  const double delta = sc.delta;
  const PureChiEvaluator ev(sc.system);
  const double target = delta * ev.system_entropy();

  std::vector<double> times{3.8};
  for (int t = 4; t <= 20; ++t) times.push_back(t);
  double worst = 0, worst_t = 0, worst_z = 0;
  int checked = 0, gate_fail = 0;
  for (double t : times) {
    const FragmentSearch fs = find_fragment_size(sc.system, env, t, delta, o);
    const double r_exact = fs.reached ? static_cast<double>(n) / static_cast<double>(fs.f_delta) : 0.0;
    const double r_law = static_cast<double>(n) * xi_bar_closed(env, t) / -std::log(delta);
    std::vector<double> y(n);
    for (std::size_t k = 0; k < n; ++k) y[k] = decoherence_sq_spin(env[k], t);
    const double analytic = ev(subset_product_mean(y, fs.f_delta)).deficit;
    const double z = std::abs(fs.deficit_at_f - analytic) / fs.stderr_chi;
    if (z > 3) ++gate_fail;
    worst_z = std::max(worst_z, z);
    if (r_exact >= 2) {
      ++checked;
      const double err = std::abs(r_exact / r_law - 1);
      if (err > worst) {
        worst = err;
        worst_t = t;
      }
    }
  }

  // R = 2 exactly when the half-environment fragment first meets the target.
  const std::size_t half = n / 2;
  auto reached = [&](double t) { return average_holevo(sc.system, env, half, t, o).mean_deficit <= target; };
  double lo = 3.0, hi = 4.5;
  const bool bracket = !reached(lo) && reached(hi);
  while (bracket && hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    (reached(mid) ? hi : lo) = mid;
  }
  const double t_cross = 0.5 * (lo + hi);
  const double t_star = onset_time(std::sqrt(3.0) / 4, delta);
  const double cross_err = std::abs(t_cross / t_star - 1);

  const bool pass = checked > 0 && worst <= 0.10 && bracket && cross_err <= 0.05 && gate_fail == 0;
  return {pass, fmt("%d times with R>=2, max |R_exact/R_law - 1| = %.2f%% at t=%.1f (limit 10%%); "
                    "R=2 crossing t=%.4f vs t*=%.4f, rel err %.2f%% (limit 5%%); "
                    "stderr gate: max |MC - analytic|/stderr = %.2f, %d of %zu outside 3 sigma",
                    checked, 100 * worst, worst_t, t_cross, t_star, 100 * cross_err, worst_z, gate_fail,
                    times.size())};
}

// 3. Finite-environment departure from quadratic growth.
Outcome backflow() {
  bool pass = true;
  std::ostringstream out;
  for (std::size_t n : {64u, 256u, 1024u}) {
    const Scenario sc = make_fig3_scenario(n, 7);
    const auto env = realize_environment(sc.environment);
    const double g2 = mean_g2(env) * static_cast<double>(n);  // <G^2>
    const double t_bf = kPi * std::sqrt(static_cast<double>(n)) / (4 * std::sqrt(g2));
    const double tau = decoherence_time(env);
    const double lnd = -std::log(sc.delta);
    HolevoOptions o;
    o.samples = 10000;
    o.seed = 7;
    double first_exact = INFINITY, first_qcb = INFINITY;
    for (int i = 1; i <= 60; ++i) {
      const double t = 1.2 * t_bf * i / 60.0;
      const double r_quad = redundancy_gaussian(1.0, tau, t, sc.delta);
      if (r_quad < 1.0) continue;  // the law asks for fragments larger than the environment
      const FragmentSearch fs = find_fragment_size(sc.system, env, t, sc.delta, o);
      const double r_exact = fs.reached ? static_cast<double>(n) / static_cast<double>(fs.f_delta) : 0.0;
      const double r_qcb = static_cast<double>(n) * xi_bar_closed(env, t) / lnd;
      if (std::abs(r_exact / r_quad - 1) > 0.10 && !std::isfinite(first_exact)) first_exact = t;
      if (std::abs(r_qcb / r_quad - 1) > 0.10 && !std::isfinite(first_qcb)) first_qcb = t;
    }
    const bool ok = first_exact > 0.8 * t_bf;
    pass = pass && ok;
    out << fmt("#E=%zu: first >10%% departure of exact R at t=%.3f = %.2f t_bf (need > 0.80), "
               "QCB law itself departs at %.2f t_bf; ",
               n, first_exact, first_exact / t_bf, first_qcb / t_bf);
  }
  return {pass, out.str()};
}

// 4. Mixedness scaling of the relative efficiency.
Outcome mixedness() {
  const std::vector<double> hs{0.0, 0.2, 0.4, 0.6, 0.8};
  const std::vector<double> ps{0.5, 0.125, 1.0 / 32};
  // QCB branch: Gaussian-scaled couplings, #E = 10^4.
  auto r_star = [](double h, double p, double t) {
    const Scenario sc = make_fig4_scenario(h, p, t);
    const auto env = realize_environment(sc.environment);
    return redundancy_qcb(xi_bar_closed(env, t), env.size(), sc.delta).r_delta;
  };
  double worst_qcb = 0;
  for (double p : ps) {
    const double ref = r_star(0.0, p, kPi / 8);
    for (double h : hs) {
      const double lambda = mixedness_factor(haziness_to_bloch_length(h));
      for (double t : {kPi / 32, kPi / 16, kPi / 8, kPi / 4, 1.0, 2.0, 4.0}) {
        const double expect = lambda * std::pow(8 * t / kPi, 2);
        worst_qcb = std::max(worst_qcb, std::abs(r_star(h, p, t) / ref / expect - 1));
      }
    }
  }

  // Exact branch: ten unscaled symmetric spins, dense Holevo for #F = 1..10 at
  // the reference time. The asymptotic rate comes from second-order Richardson
  // extrapolation of the decrements r(F) = ln d(F-1) - ln d(F) = xi + b/F + c/F^2.
  const double t = kPi / 8;
  double worst_exact = 0, worst_low = 0;
  bool ordered = true;
  std::ostringstream per_h;
  for (double p : ps) {
    double base_rate = 0, base_xi = 0, prev_rate = INFINITY;
    for (double h : hs) {
      const Scenario sc = make_fig4_scenario(h, p, t, 10, false);
      const auto env = realize_environment(sc.environment);
      const double h_s = system_entropy(sc.system);
      std::vector<double> ld(11);
      for (std::size_t f = 7; f <= 10; ++f) ld[f] = std::log(h_s - holevo_dense(sc.system, env, first(f), t, 10));
      Eigen::Matrix3d a;
      Eigen::Vector3d b;
      for (int i = 0; i < 3; ++i) {
        const double f = 8 + i;
        a(i, 0) = 1;
        a(i, 1) = 1 / f;
        a(i, 2) = 1 / (f * f);
        b(i) = ld[8 + i - 1] - ld[8 + i];
      }
      const double rate = a.fullPivLu().solve(b)(0);
      const double xi = xi_closed_no_field(env[0], t);
      if (h == 0.0) {
        base_rate = rate;
        base_xi = xi;
      }
      ordered = ordered && rate < prev_rate;
      prev_rate = rate;
      const double err = std::abs((rate / base_rate) / (xi / base_xi) - 1);
      worst_exact = std::max(worst_exact, err);
      if (h <= 0.6) worst_low = std::max(worst_low, err);
      if (h == 0.8) per_h << fmt(" p=%.4g: %.1f%%", p, 100 * err);
    }
  }
  const bool pass = worst_qcb <= 0.01 && ordered && worst_exact <= 0.10;
  return {pass, fmt("QCB ratio vs lambda(h)(8t/pi)^2: max rel err %.3f%% (limit 1%%); exact (dense, #F<=10) "
                    "ordering in h %s; exact vs QCB ratio: max %.1f%% for h<=0.6, h=0.8:%s (limit 10%%)",
                    100 * worst_qcb, ordered ? "reproduced" : "BROKEN", 100 * worst_low, per_h.str().c_str())};
}

// 5. Oscillating redundancy of the coupling band.
Outcome band_inset() {
  const Scenario sc = make_fig5_scenario(32, 0.1, 5);
  const auto env = realize_environment(sc.environment);
  const std::size_t n = env.size();
  HolevoOptions o;
  o.averaging = Averaging::Enumerate;
  o.max_subsets = 1'000'000'000;
  // Plateaus sit at #E/k for a positive integer k; k may exceed #E for the discretized estimate.
  const auto on_plateau = [n](double r) {
    if (r == 0.0) return true;
    const double k = std::round(static_cast<double>(n) / r);
    return k >= 1 && static_cast<double>(n) / k == r;
  };
  int agree = 0, off_plateau = 0;
  std::size_t max_f = 0;
  for (double t : sc.times) {
    const FragmentSearch fs = find_fragment_size(sc.system, env, t, sc.delta, o);
    const double deficit = mean_overlap_deficit(env, t);
    const double fc = deficit > 0 ? std::max(1.0, std::ceil(-std::log(sc.delta) / -std::log1p(-deficit))) : INFINITY;
    bool ok;
    if (fs.reached) {
      ok = std::abs(static_cast<double>(fs.f_delta) - fc) <= 1;
      max_f = std::max(max_f, fs.f_delta);
    } else {
      ok = fc >= static_cast<double>(n);
    }
    agree += ok;
    const double r_exact = fs.reached ? static_cast<double>(n) / static_cast<double>(fs.f_delta) : 0.0;
    const double r_disc = std::isfinite(fc) ? static_cast<double>(n) / fc : 0.0;
    off_plateau += !on_plateau(r_exact) + !on_plateau(r_disc);
  }
  const double frac = static_cast<double>(agree) / static_cast<double>(sc.times.size());
  return {frac >= 0.9 && off_plateau == 0,
          fmt("|F_exact - ceil(F_c)| <= 1 at %d/%zu times (need >= 90%%); largest enumerated F_delta = %zu; "
              "%d values outside {0} and {32/k}",
              agree, sc.times.size(), max_f, off_plateau)};
}

// 6. Oracle equivalences on random inputs.
Outcome oracles() {
  constexpr int kCases = 1000;
  int holevo_bad = 0, xi_bad = 0, c_bad = 0, gamma_bad = 0, fano_bad = 0;
  double holevo_max = 0, xi_max = 0, c_max = 0, gamma_max = 0;
  std::array<int, 11> f_count{};
  for (int i = 0; i < kCases; ++i) {
    Gen g(6001, i);
    // #F = 10 and 9 are costly on the dense path; give them fixed shares.
    const std::size_t f = i < 25 ? 10 : i < 75 ? 9 : 1 + i % 8;
    ++f_count[f];
    std::vector<SpinSpec> env;
    for (std::size_t k = 0; k < f; ++k) env.push_back(g.spin(true));
    SystemSpec sys;
    sys.p_up = g.uniform(0.02, 0.98);
    const double t = g.time();
    const double d = std::abs(holevo_pure_closed(sys, env, first(f), t) - holevo_dense(sys, env, first(f), t, 10));
    holevo_max = std::max(holevo_max, d);
    holevo_bad += d > 1e-10;
  }
  for (int i = 0; i < kCases; ++i) {
    Gen g(6002, i);
    const SpinSpec s = g.spin();
    const double t = g.time();
    const auto pair = conditional_states(s, t);
    const auto best = optimize_c(bloch_to_density(pair.up), bloch_to_density(pair.down));
    const double dx = std::abs(best.xi - xi_closed_field(s, t));
    xi_max = std::max(xi_max, dx);
    xi_bad += dx > 1e-10;
    const double dc = std::abs(best.c_star - 0.5);
    c_max = std::max(c_max, dc);
    c_bad += dc > 1e-6;
    const SpinSpec pure{s.g, s.omega, QubitState::pure(s.init.theta(), s.init.phi())};
    const auto pp = conditional_states(pure, t);
    const double dg = std::abs(std::norm(pp.gamma) - std::pow(std::cos(pp.theta_sep / 2), 2));
    gamma_max = std::max(gamma_max, dg);
    gamma_bad += dg > 1e-10;
  }
  for (int i = 0; i < kCases; ++i) {
    Gen g(6003, i);
    const std::size_t f = 1 + g.below(8);
    std::vector<SpinSpec> env;
    for (std::size_t k = 0; k < f; ++k) env.push_back(g.spin());
    SystemSpec sys;
    sys.p_up = g.uniform(0.02, 0.98);
    const double t = g.time();
    const auto [up, down] = fragment_states(env, first(f), t);
    const double chi = holevo_dense(sys, env, first(f), t);
    fano_bad += chi < fano_lower_bound(system_entropy(sys), helstrom_error(sys, up, down)) - 1e-12;
  }
  const bool pass = holevo_bad + xi_bad + c_bad + gamma_bad + fano_bad == 0;
  return {pass, fmt("closed vs dense Holevo: %d/%d over 1e-10 (max %.1e, #F=10 cases %d); closed vs matrix xi: %d "
                    "(max %.1e); c* off 1/2 by >1e-6: %d (max %.1e); |gamma|^2 vs cos^2: %d (max %.1e); "
                    "Fano violations: %d",
                    holevo_bad, kCases, holevo_max, f_count[10], xi_bad, xi_max, c_bad, c_max, gamma_bad,
                    gamma_max, fano_bad)};
}

// 7. States on the insensitive axis acquire no record.
Outcome insensitive() {
  double xi_max = 0, gamma_max = 0;
  int points = 0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      for (int k = 0; k < 10; ++k) {
        const double g = 0.1 + 0.2 * i;
        const double omega = 0.2 * j;
        const double t = 0.05 + 1.1 * k;
        SpinSpec s{g, omega, QubitState::pure(0, 0)};
        s.init = QubitState::from_vector(insensitive_axis(s, t).direction());
        const auto pair = conditional_states(s, t);
        const double xi = optimize_c(bloch_to_density(pair.up), bloch_to_density(pair.down)).xi;
        xi_max = std::max(xi_max, xi);
        gamma_max = std::max(gamma_max, std::abs(std::abs(pair.gamma) - 1));
        ++points;
      }
    }
  }
  return {xi_max < 1e-10 && gamma_max <= 1e-10,
          fmt("%d (g, omega, t) points: max xi = %.1e (limit 1e-10), max ||gamma| - 1| = %.1e (limit 1e-10)", points,
              xi_max, gamma_max)};
}

// 8. Closed-form band average against adaptive quadrature of the matrix overlap.
struct BandPoint {
  double lambda_a;
  double theta;
  double t;
};

double overlap_integrand(double g, void* p) {
  const auto* bp = static_cast<const BandPoint*>(p);
  const auto pair = conditional_states(SpinSpec{g, 0.0, QubitState::make(bp->lambda_a, bp->theta, 0.0)}, bp->t);
  return chernoff_overlap(bloch_to_density(pair.up), bloch_to_density(pair.down), 0.5);
}

Outcome band_quadrature() {
  gsl_set_error_handler_off();
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2000);
  double worst = 0, worst_printed = 0;
  int failures = 0, points = 0;
  for (int i = 0; i < 1000; ++i) {
    Gen gen(8001, i);
    const double w = 0.05 + 1.95 * (i % 25) / 24.0;
    const double t = 20.0 * (i / 25) / 39.0;
    const double a = gen.uniform(0.2, 1.0);
    const double theta = gen.uniform(0.1, kPi - 0.1);
    BandPoint bp{a, theta, t};
    gsl_function fn{&overlap_integrand, &bp};
    double value = 0, abserr = 0;
    const int rc = gsl_integration_qag(&fn, 0.0, w, 1e-14, 1e-13, 2000, GSL_INTEG_GAUSS61, ws, &value, &abserr);
    failures += rc != GSL_SUCCESS;
    value /= w;
    const BandSpec band{w, mixedness_factor(a), theta};
    worst = std::max(worst, std::abs(band_mean_overlap(band, t) - value));
    // The same expression with the oscillating term squared.
    const double s2 = std::pow(std::sin(theta), 2);
    const double x = 4 * w * t;
    const double printed = x > 0 ? 1 - band.lambda * s2 / 2 + band.lambda * std::pow(std::sin(x), 2) * s2 / (2 * x) : 1.0;
    worst_printed = std::max(worst_printed, std::abs(printed - value));
    ++points;
  }
  gsl_integration_workspace_free(ws);
  return {worst <= 1e-10 && failures == 0,
          fmt("%d (W, t) points: max |closed - quadrature| = %.1e (limit 1e-10), %d quadrature failures; "
              "squared-sine variant of the oscillating term deviates by up to %.2e, so the first power is kept",
              points, worst, failures, worst_printed)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "decoherence time of the Gaussian environment", 1, tau_d},
      {2, "quadratic redundancy and onset", 60, quadratic_onset},
      {3, "finite-environment back-flow", 300, backflow},
      {4, "mixedness scaling", 600, mixedness},
      {5, "oscillatory redundancy of the coupling band", 300, band_inset},
      {6, "oracle equivalence suite", 120, oracles},
      {7, "insensitive-axis zero", 1, insensitive},
      {8, "band-average integral", 10, band_quadrature},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("criterion %d %s: %s | %s | %.2f s (budget %.0f s%s)\n", c.id, pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), secs, c.budget_s, in_time ? "" : ", EXCEEDED");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
