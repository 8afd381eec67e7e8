// Copyright 2026 The tqgm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Turning a trained model into level forecasts, point values and
 * entanglement-entropy traces.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tqgm/model.hpp"

namespace tqgm {

/// Marginal of one asset's levels from a joint target distribution.
std::vector<double> asset_marginal(const RegisterLayout &layout,
                                   std::span<const double> joint,
                                   std::size_t asset);

/// Index of the largest entry; ties resolve to the lowest index.
int argmax_level(std::span<const double> probs);

/// [step][asset] argmax levels for k = 1..horizon.
std::vector<std::vector<int>> predict_levels(const TrainedModel &model,
                                             std::span<const int> initial,
                                             std::size_t horizon);

/// [step][asset] expectation of bin representatives under each asset's
/// marginal. `representatives` is [asset][level].
std::vector<std::vector<double>>
predict_point_values(const TrainedModel &model, std::span<const int> initial,
                     std::size_t horizon,
                     const std::vector<std::vector<double>> &representatives);

/// Both forecasts from a single evolution per step.
struct StepForecast {
    std::vector<int> levels;      // per asset
    std::vector<double> expected; // per asset
    std::vector<std::vector<double>> marginals;
};

std::vector<StepForecast>
forecast_steps(const RegisterLayout &layout, const ModelParams &params,
               std::span<const int> initial, std::size_t horizon,
               const std::vector<std::vector<double>> &representatives);

struct EntropyTrace {
    std::vector<double> entropy_bits; // t = 1..steps
    double max_bits{0.0};
};

/// Von Neumann entropy of asset 0's qubits after t = 1..steps evolutions.
EntropyTrace entropy_trace(const RegisterLayout &layout,
                           const ModelParams &params,
                           std::span<const int> initial,
                           std::size_t steps = 5);
EntropyTrace entropy_trace(const TrainedModel &model,
                           std::span<const int> initial,
                           std::size_t steps = 5);

/// Shannon entropy (bits) of asset 0's level histogram from `shots`
/// measurement samples per step. An upper bound on the exact entropy
/// above for pure global states, estimated the way hardware would.
EntropyTrace sampled_entropy_trace(const RegisterLayout &layout,
                                   const ModelParams &params,
                                   std::span<const int> initial,
                                   std::size_t steps, std::size_t shots,
                                   std::uint64_t seed);

} // namespace tqgm
