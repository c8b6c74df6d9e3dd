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

#include "core/holevo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "core/dynamics.hpp"
#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace qdarwin {

namespace {

constexpr std::uint64_t kSubsetDomain = 0x53554253ull;  // "SUBS"
constexpr double kMonotoneTol = 1e-9;

// 8-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 4> kGlNodes{0.1834346424956498, 0.5255324099163290,
                                         0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kGlWeights{0.3626837833783620, 0.3137066458778873,
                                           0.2223810344533745, 0.1012285362903763};

double xlog2(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

void check_selection(std::span<const SpinSpec> env, const FragmentSelection& frag) {
  if (frag.empty()) fail(ErrorKind::BadArgument, "fragment must select at least one spin");
  for (std::size_t i = 0; i < frag.size(); ++i) {
    if (frag[i] >= env.size()) fail(ErrorKind::BadArgument, "fragment index out of range");
    if (i > 0 && frag[i] <= frag[i - 1]) {
      fail(ErrorKind::BadArgument, "fragment indices must be sorted and distinct");
    }
  }
}

void require_time(double t) {
  if (!std::isfinite(t) || t < 0.0) fail(ErrorKind::BadArgument, "time must be finite and nonnegative");
}

// Per-fragment evaluation on either the closed pure path or the dense path.
class FragmentEvaluator {
 public:
  FragmentEvaluator(const SystemSpec& system, std::span<const SpinSpec> env, double t,
                    int dense_cap)
      : system_(system), env_(env), t_(t), dense_cap_(dense_cap), pure_chi_(system) {
    pure_ = std::all_of(env.begin(), env.end(), [](const SpinSpec& s) { return s.init.a() == 1.0; });
    if (pure_) {
      y_.resize(env.size());
      for (std::size_t k = 0; k < env.size(); ++k) y_[k] = decoherence_sq_spin(env[k], t);
    }
  }

  bool pure() const noexcept { return pure_; }
  const std::vector<double>& y() const noexcept { return y_; }
  const PureChiEvaluator& pure_chi() const noexcept { return pure_chi_; }
  HolevoMode path() const noexcept { return pure_ ? HolevoMode::ClosedPure : HolevoMode::Dense; }

  void check_size(std::size_t f) const {
    if (!pure_ && static_cast<int>(f) > dense_cap_) {
      fail(ErrorKind::TooLarge,
           "fragment of " + std::to_string(f) + " mixed spins exceeds the dense cap of " +
               std::to_string(dense_cap_) +
               "; use the qcb command for this scenario or raise --dense-cap (at most " +
               std::to_string(kDenseCapMax) + ")");
    }
  }

  PureChi operator()(const FragmentSelection& frag) const {
    if (pure_) {
      double prod = 1.0;
      for (std::size_t k : frag) prod *= y_[k];
      return pure_chi_(prod);
    }
    const double chi = holevo_dense(system_, env_, frag, t_, dense_cap_);
    return {chi, std::max(0.0, pure_chi_.system_entropy() - chi)};
  }

 private:
  const SystemSpec& system_;
  std::span<const SpinSpec> env_;
  double t_;
  int dense_cap_;
  PureChiEvaluator pure_chi_;
  bool pure_ = true;
  std::vector<double> y_;
};

struct GroupSum {
  double chi = 0.0;
  double deficit = 0.0;
};

HolevoEstimate enumerate_mean(const FragmentEvaluator& eval, std::size_t n, std::size_t f,
                              unsigned threads) {
  // Subsets are grouped by their smallest index; each group is summed with
  // compensation and the groups are combined pairwise, so the result does not
  // depend on the thread count.
  const std::size_t groups = n - f + 1;
  std::vector<GroupSum> sums(groups);
  parallel_for(groups, threads, [&](std::size_t first) {
    CompensatedSum sc;
    CompensatedSum sd;
    if (eval.pure()) {
      const auto& y = eval.y();
      const auto& pc = eval.pure_chi();
      auto dfs = [&](auto&& self, std::size_t start, std::size_t remaining, double prod) -> void {
        if (remaining == 0) {
          const PureChi v = pc(prod);
          sc.add(v.chi);
          sd.add(v.deficit);
          return;
        }
        for (std::size_t j = start; j + remaining <= n; ++j) self(self, j + 1, remaining - 1, prod * y[j]);
      };
      dfs(dfs, first + 1, f - 1, y[first]);
    } else {
      FragmentSelection sel{first};
      auto dfs = [&](auto&& self, std::size_t start, std::size_t remaining) -> void {
        if (remaining == 0) {
          const PureChi v = eval(sel);
          sc.add(v.chi);
          sd.add(v.deficit);
          return;
        }
        for (std::size_t j = start; j + remaining <= n; ++j) {
          sel.push_back(j);
          self(self, j + 1, remaining - 1);
          sel.pop_back();
        }
      };
      dfs(dfs, first + 1, f - 1);
    }
    sums[first] = {sc.value(), sd.value()};
  });
  std::vector<double> chi(groups);
  std::vector<double> def(groups);
  for (std::size_t i = 0; i < groups; ++i) {
    chi[i] = sums[i].chi;
    def[i] = sums[i].deficit;
  }
  const double count = static_cast<double>(choose(n, f));
  HolevoEstimate est;
  est.mean_chi = pairwise_sum(chi) / count;
  est.mean_deficit = pairwise_sum(def) / count;
  est.n_samples = choose(n, f);
  est.mode = HolevoMode::Enumerated;
  return est;
}

HolevoEstimate monte_carlo_mean(const FragmentEvaluator& eval, std::size_t n, std::size_t f,
                                const HolevoOptions& opts) {
  const std::size_t samples = opts.samples;
  std::vector<double> chi(samples);
  std::vector<double> def(samples);
  const unsigned threads = opts.threads == 0 ? default_threads() : opts.threads;
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(threads, samples));
  const std::uint64_t key = derive_seed(opts.seed, kSubsetDomain);
  parallel_for(chunks, threads, [&](std::size_t chunk) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<std::size_t> swaps(f);
    FragmentSelection sel(f);
    const std::size_t begin = samples * chunk / chunks;
    const std::size_t end = samples * (chunk + 1) / chunks;
    for (std::size_t d = begin; d < end; ++d) {
      // Partial Fisher-Yates: draw d always consumes the same stream, so the
      // first f picks are shared by every larger fragment size.
      PhiloxStream rng(key, d);
      for (std::size_t i = 0; i < f; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(perm[i], perm[j]);
        swaps[i] = j;
      }
      PureChi v;
      if (eval.pure()) {
        double prod = 1.0;
        for (std::size_t i = 0; i < f; ++i) prod *= eval.y()[perm[i]];
        v = eval.pure_chi()(prod);
      } else {
        std::copy_n(perm.begin(), f, sel.begin());
        std::sort(sel.begin(), sel.end());
        v = eval(sel);
      }
      chi[d] = v.chi;
      def[d] = v.deficit;
      for (std::size_t i = f; i-- > 0;) std::swap(perm[i], perm[swaps[i]]);
    }
  });
  HolevoEstimate est;
  est.n_samples = samples;
  est.mode = HolevoMode::MonteCarlo;
  est.mean_chi = pairwise_sum(chi) / static_cast<double>(samples);
  est.mean_deficit = pairwise_sum(def) / static_cast<double>(samples);
  if (samples > 1) {
    // chi and the deficit differ by a constant, and only the deficits keep
    // their precision once chi is within rounding of H_S.
    for (double& d : def) d = (d - est.mean_deficit) * (d - est.mean_deficit);
    const double var = pairwise_sum(def) / static_cast<double>(samples - 1);
    est.stderr_chi = std::sqrt(var / static_cast<double>(samples));
  }
  return est;
}

}  // namespace

std::string_view to_string(HolevoMode m) noexcept {
  switch (m) {
    case HolevoMode::ClosedPure: return "closed_pure";
    case HolevoMode::Dense: return "dense";
    case HolevoMode::Enumerated: return "enumerated";
    case HolevoMode::MonteCarlo: return "monte_carlo";
  }
  return "unknown";
}

PureChiEvaluator::PureChiEvaluator(const SystemSpec& system)
    : p_(system.p_up),
      q_(system.p_up * (1.0 - system.p_up)),
      r0_(std::abs(system.p_up - 0.5)),
      h_s_(binary_entropy(system.p_up)) {}

PureChi PureChiEvaluator::operator()(double y) const noexcept {
  y = std::clamp(y, 0.0, 1.0);
  const double r = std::sqrt(r0_ * r0_ + q_ * y);
  const double mu_minus = q_ * (1.0 - y) / (0.5 + r);
  const double chi = -xlog2(mu_minus) - xlog2(1.0 - mu_minus);
  const double direct = h_s_ - chi;
  PureChi out{chi, direct};
  if (direct < 1e-2 * h_s_) {
    // H_S - chi = (2/ln2) * integral of atanh(2u) over [r0, r]; the direct
    // difference loses everything once the deficit nears machine epsilon.
    const double span = r + r0_ > 0.0 ? q_ * y / (r + r0_) : 0.0;
    const double mid = r0_ + 0.5 * span;
    const double half = 0.5 * span;
    double acc = 0.0;
    for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
      acc += kGlWeights[i] * (std::atanh(2.0 * (mid - half * kGlNodes[i])) +
                              std::atanh(2.0 * (mid + half * kGlNodes[i])));
    }
    out.deficit = 2.0 / kLn2 * half * acc;
    out.chi = h_s_ - out.deficit;
  }
  out.deficit = std::max(0.0, out.deficit);
  out.chi = std::clamp(out.chi, 0.0, h_s_);
  return out;
}

double system_entropy(const SystemSpec& system) { return binary_entropy(system.p_up); }

double holevo_pure_closed(const SystemSpec& system, Complex gamma_frag) {
  return PureChiEvaluator(system)(std::norm(gamma_frag)).chi;
}

double holevo_pure_closed(const SystemSpec& system, std::span<const SpinSpec> env,
                          const FragmentSelection& frag, double t) {
  check_selection(env, frag);
  require_time(t);
  Complex gamma = 1.0;
  for (std::size_t k : frag) {
    if (env[k].init.a() != 1.0) {
      fail(ErrorKind::MixedEnvironment, "spin " + std::to_string(k) + " is not in a pure state");
    }
    gamma *= decoherence_factor_spin(env[k], t);
  }
  return holevo_pure_closed(system, gamma);
}

std::pair<DenseState, DenseState> fragment_states(std::span<const SpinSpec> env,
                                                  const FragmentSelection& frag, double t,
                                                  int dense_cap) {
  check_selection(env, frag);
  std::vector<Mat2> up;
  std::vector<Mat2> down;
  up.reserve(frag.size());
  down.reserve(frag.size());
  for (std::size_t k : frag) {
    const ConditionalPair p = conditional_states(env[k], t);
    up.push_back(bloch_to_density(p.up));
    down.push_back(bloch_to_density(p.down));
  }
  return {kron(up, dense_cap), kron(down, dense_cap)};
}

double holevo_dense(const SystemSpec& system, std::span<const SpinSpec> env,
                    const FragmentSelection& frag, double t, int dense_cap) {
  require_time(t);
  auto [up, down] = fragment_states(env, frag, t, dense_cap);
  const Eigen::MatrixXcd mix = system.p_up * up.matrix() + system.p_down() * down.matrix();
  const Eigen::VectorXd ev = hermitian_eigenvalues(mix);
  const double h_mix = spectrum_entropy({ev.data(), static_cast<std::size_t>(ev.size())});
  // Both conditional states are unitary images of the same product state, so
  // their entropy is the sum of single-spin entropies.
  double h_cond = 0.0;
  for (std::size_t k : frag) h_cond += binary_entropy(0.5 * (1.0 + env[k].init.a()));
  return std::max(0.0, h_mix - h_cond);
}

MutualInformation mutual_information_pure(const SystemSpec& system, std::span<const SpinSpec> env,
                                          const FragmentSelection& frag, double t) {
  check_selection(env, frag);
  require_time(t);
  if (!system.is_pure()) fail(ErrorKind::MixedSystem, "system must be in a pure state");
  Complex g_frag = 1.0;
  Complex g_rest = 1.0;
  std::size_t next = 0;
  for (std::size_t k = 0; k < env.size(); ++k) {
    if (env[k].init.a() != 1.0) {
      fail(ErrorKind::MixedEnvironment, "spin " + std::to_string(k) + " is not in a pure state");
    }
    const Complex g = decoherence_factor_spin(env[k], t);
    if (next < frag.size() && frag[next] == k) {
      g_frag *= g;
      ++next;
    } else {
      g_rest *= g;
    }
  }
  MutualInformation mi;
  const double h_sdf = holevo_pure_closed(system, g_frag);
  const double h_sde = holevo_pure_closed(system, g_frag * g_rest);
  const double h_sdef = holevo_pure_closed(system, g_rest);
  mi.holevo_part = h_sdf;
  mi.discord_part = h_sde - h_sdef;
  mi.total = mi.holevo_part + mi.discord_part;
  return mi;
}

std::uint64_t choose(std::size_t n, std::size_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

HolevoEstimate average_holevo(const SystemSpec& system, std::span<const SpinSpec> env,
                              std::size_t frag_size, double t, const HolevoOptions& opts) {
  require_time(t);
  const std::size_t n = env.size();
  if (n == 0) fail(ErrorKind::EmptyEnvironment, "environment has no spins");
  if (frag_size < 1 || frag_size > n) {
    fail(ErrorKind::BadArgument, "fragment size must lie in [1, #E]");
  }
  FragmentEvaluator eval(system, env, t, opts.dense_cap);
  eval.check_size(frag_size);

  const bool identical = std::all_of(env.begin(), env.end(), [&](const SpinSpec& s) { return s == env[0]; });
  if (frag_size == n || identical) {
    FragmentSelection sel(frag_size);
    std::iota(sel.begin(), sel.end(), std::size_t{0});
    const PureChi v = eval(sel);
    return {v.chi, v.deficit, 0.0, 1, eval.path()};
  }

  Averaging mode = opts.averaging;
  if (mode == Averaging::Auto) {
    mode = choose(n, frag_size) <= opts.max_subsets ? Averaging::Enumerate : Averaging::MonteCarlo;
  }
  if (mode == Averaging::Enumerate) {
    const std::uint64_t count = choose(n, frag_size);
    if (count > opts.max_subsets) {
      fail(ErrorKind::TooManySubsets,
           "C(" + std::to_string(n) + ", " + std::to_string(frag_size) + ") = " +
               std::to_string(count) + " subsets exceeds the limit of " +
               std::to_string(opts.max_subsets) + "; use monte_carlo or raise --max-subsets");
    }
    return enumerate_mean(eval, n, frag_size, opts.threads);
  }
  if (opts.samples < 1) fail(ErrorKind::BadArgument, "monte carlo needs at least one sample");
  return monte_carlo_mean(eval, n, frag_size, opts);
}

Averaging resolve_averaging(std::size_t n_env, const HolevoOptions& opts) {
  if (opts.averaging != Averaging::Auto) return opts.averaging;
  return choose(n_env, n_env / 2) <= opts.max_subsets ? Averaging::Enumerate : Averaging::MonteCarlo;
}

FragmentSearch find_fragment_size(const SystemSpec& system, std::span<const SpinSpec> env,
                                  double t, double delta, const HolevoOptions& opts) {
  require_delta(delta);
  require_time(t);
  const std::size_t n = env.size();
  if (n == 0) fail(ErrorKind::EmptyEnvironment, "environment has no spins");
  HolevoOptions fixed = opts;
  fixed.averaging = resolve_averaging(n, opts);
  const double target = delta * system_entropy(system);

  std::map<std::size_t, HolevoEstimate> cache;
  auto estimate = [&](std::size_t f) -> const HolevoEstimate& {
    auto it = cache.find(f);
    if (it == cache.end()) it = cache.emplace(f, average_holevo(system, env, f, t, fixed)).first;
    return it->second;
  };
  auto ok = [&](std::size_t f) { return estimate(f).mean_deficit <= target; };
  auto result = [&](std::size_t f, bool reached) {
    const HolevoEstimate& e = estimate(f);
    return FragmentSearch{f, reached, e.mean_chi, e.mean_deficit, e.stderr_chi, e.mode, cache.size()};
  };

  if (!ok(n)) return result(n, false);

  // Start from the Chernoff estimate.
  std::size_t guess = n;
  const double xi = xi_bar_closed(env, t, opts.threads == 0 ? default_threads() : opts.threads);
  if (xi > 0.0) {
    const double fc = std::ceil(-std::log(delta) / xi);
    guess = fc >= static_cast<double>(n) ? n : static_cast<std::size_t>(std::max(1.0, fc));
  }
  std::size_t lo = 0;  // largest size known to fall short (0 = empty fragment)
  std::size_t hi = n;  // smallest size known to reach the target
  if (ok(guess)) {
    hi = guess;
  } else {
    lo = guess;
  }
  // The log deficit is close to linear in #F, so interpolate on it and probe
  // the neighbour of the prediction; every other step bisects so a curved
  // profile still converges.
  const double h_s = system_entropy(system);
  auto log_deficit = [&](std::size_t f) { return f == 0 ? std::log(h_s) : std::log(estimate(f).mean_deficit); };
  bool interpolate = true;
  while (hi - lo > 1) {
    std::size_t mid = lo + (hi - lo) / 2;
    const double dl = log_deficit(lo);
    const double dh = log_deficit(hi);
    if (interpolate && std::isfinite(dl) && std::isfinite(dh) && dl > dh) {
      const double frac = (dl - std::log(target)) / (dl - dh);
      const double pred = static_cast<double>(lo) + frac * static_cast<double>(hi - lo);
      mid = std::clamp(static_cast<std::size_t>(std::ceil(pred)), lo + 1, hi - 1);
      if (ok(mid)) {
        hi = mid;
        if (hi - lo > 1 && !ok(hi - 1)) lo = hi - 1;
        else if (hi - lo > 1) hi = hi - 1;
      } else {
        lo = mid;
        if (hi - lo > 1 && ok(lo + 1)) hi = lo + 1;
        else if (hi - lo > 1) lo = lo + 1;
      }
    } else if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
    interpolate = !interpolate;
  }

  double prev = std::numeric_limits<double>::infinity();
  std::size_t prev_f = 0;
  for (const auto& [f, e] : cache) {
    if (e.mean_deficit > prev + kMonotoneTol) {
      fail(ErrorKind::NumericalFailure,
           "mean Holevo deficit increases from " + std::to_string(prev) + " at #F=" +
               std::to_string(prev_f) + " to " + std::to_string(e.mean_deficit) + " at #F=" +
               std::to_string(f));
    }
    prev = e.mean_deficit;
    prev_f = f;
  }
  return result(hi, true);
}

RedundancyResult redundancy_exact(const SystemSpec& system, std::span<const SpinSpec> env,
                                  double t, double delta, const HolevoOptions& opts) {
  const FragmentSearch s = find_fragment_size(system, env, t, delta, opts);
  RedundancyResult r;
  r.method = RedundancyMethod::Exact;
  r.reached = s.reached;
  if (s.reached) {
    r.f_delta = static_cast<double>(s.f_delta);
    r.r_delta = static_cast<double>(env.size()) / r.f_delta;
  }
  return r;
}

}  // namespace qdarwin
