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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "core/chernoff.hpp"
#include "core/model.hpp"
#include "core/qmath.hpp"

namespace qdarwin {

/// Sorted, distinct indices into the realised environment.
using FragmentSelection = std::vector<std::size_t>;

enum class HolevoMode { ClosedPure, Dense, Enumerated, MonteCarlo };
std::string_view to_string(HolevoMode m) noexcept;

enum class Averaging { Auto, Enumerate, MonteCarlo };

struct HolevoOptions {
  Averaging averaging = Averaging::Auto;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 picks the hardware concurrency
  int dense_cap = kDenseCapDefault;
  std::uint64_t max_subsets = 10'000'000;
};

struct HolevoEstimate {
  double mean_chi = 0.0;      // bits
  double mean_deficit = 0.0;  // H_S - chi, accurate far below machine epsilon of H_S
  double stderr_chi = 0.0;
  std::size_t n_samples = 0;
  HolevoMode mode = HolevoMode::ClosedPure;
};

/// Holevo quantity and deficit for a pure fragment whose conditional states
/// overlap with squared magnitude y = |gamma_F|^2.
struct PureChi {
  double chi = 0.0;
  double deficit = 0.0;
};

class PureChiEvaluator {
 public:
  explicit PureChiEvaluator(const SystemSpec& system);
  PureChi operator()(double y) const noexcept;
  double system_entropy() const noexcept { return h_s_; }

 private:
  double p_ = 0.5;
  double q_ = 0.25;
  double r0_ = 0.0;
  double h_s_ = 1.0;
};

double system_entropy(const SystemSpec& system);
/// Entropy of the system decohered by a fragment with decoherence factor gamma_frag.
double holevo_pure_closed(const SystemSpec& system, Complex gamma_frag);
/// Throws MixedEnvironment if any selected spin is not pure.
double holevo_pure_closed(const SystemSpec& system, std::span<const SpinSpec> env,
                          const FragmentSelection& frag, double t);
/// Direct evaluation on the dense conditional fragment states. Throws TooLarge.
double holevo_dense(const SystemSpec& system, std::span<const SpinSpec> env,
                    const FragmentSelection& frag, double t, int dense_cap = kDenseCapDefault);

/// Conditional fragment states rho_{F|up}, rho_{F|down}.
std::pair<DenseState, DenseState> fragment_states(std::span<const SpinSpec> env,
                                                  const FragmentSelection& frag, double t,
                                                  int dense_cap = kDenseCapDefault);

struct MutualInformation {
  double total = 0.0;
  double holevo_part = 0.0;
  double discord_part = 0.0;
};

/// Throws MixedEnvironment, MixedSystem.
MutualInformation mutual_information_pure(const SystemSpec& system, std::span<const SpinSpec> env,
                                          const FragmentSelection& frag, double t);

/// Binomial coefficient saturated at UINT64_MAX.
std::uint64_t choose(std::size_t n, std::size_t k) noexcept;

/// Mean Holevo quantity over fragments of the given size.
/// Throws TooManySubsets, TooLarge.
HolevoEstimate average_holevo(const SystemSpec& system, std::span<const SpinSpec> env,
                              std::size_t frag_size, double t, const HolevoOptions& opts);

struct FragmentSearch {
  std::size_t f_delta = 0;
  bool reached = false;
  double chi_at_f = 0.0;
  double deficit_at_f = 0.0;
  double stderr_chi = 0.0;
  HolevoMode mode = HolevoMode::ClosedPure;
  std::size_t evaluations = 0;
};

/// Averaging mode used for a whole search, fixed up front so every size
/// shares one estimator.
Averaging resolve_averaging(std::size_t n_env, const HolevoOptions& opts);

/// Smallest size whose mean deficit is at most delta H_S. When even the whole
/// environment falls short, reached is false and f_delta = #E.
/// Throws BadDelta, NumericalFailure on a non-monotone deficit.
FragmentSearch find_fragment_size(const SystemSpec& system, std::span<const SpinSpec> env,
                                  double t, double delta, const HolevoOptions& opts);

RedundancyResult redundancy_exact(const SystemSpec& system, std::span<const SpinSpec> env,
                                  double t, double delta, const HolevoOptions& opts);

}  // namespace qdarwin
