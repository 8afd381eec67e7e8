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
 * Training of the time-series generative model.
 *
 * The objective is the mean negative log-likelihood of every observed
 * transition (s_t -> s_{t+k}), k = 1..K, under the k-step Born distribution.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tqgm/ansatz.hpp"
#include "tqgm/market_data.hpp"

namespace tqgm {

/**
 * How gradients are computed.
 *
 * ParameterShift evaluates every rotation twice at +-pi/2 (one pair per
 * gate occurrence; phi appears in both V and V^dagger). Adjoint obtains the
 * same exact derivative from one forward and one backward sweep and is the
 * training default. FiniteDifference is central differences of the loss.
 */
enum class GradientMethod { ParameterShift, Adjoint, FiniteDifference };

std::string to_string(GradientMethod m);
GradientMethod gradient_method_from_string(std::string_view s);

struct TrainingConfig {
    double learning_rate{0.1};
    std::size_t n_steps{300};
    int horizon{10}; // K
    std::size_t n_layers{1};
    std::uint64_t seed{0};
    std::size_t n_runs{5};
    GradientMethod gradient_method{GradientMethod::Adjoint};
    double fd_step{1e-5};

    void validate() const;
};

struct TrainingSample {
    std::vector<int> source_levels;
    std::vector<int> target_levels;
    int k{1};
    std::size_t source_index{0};
};

/// All pairs (t, t + k) for k = 1..K, ordered by (t, k). Pairs touching a
/// missing level or the mask are skipped.
std::vector<TrainingSample>
make_training_set(const DiscreteSeries &series, int K,
                  const std::optional<TimeMask> &mask = std::nullopt);

inline constexpr double kProbabilityFloor = 1e-12;

/// Samples collapsed to (source joint state, k) -> target counts.
struct SampleGroups {
    struct Group {
        std::size_t source{0};
        int k{0};
        std::vector<std::pair<std::size_t, double>> targets; // (joint, count)
    };
    std::vector<Group> groups; // sorted by (source, k)
    double total_weight{0.0};

    static SampleGroups build(const RegisterLayout &layout,
                              std::span<const TrainingSample> samples);
};

double nll_loss(const RegisterLayout &layout, const ModelParams &params,
                std::span<const TrainingSample> samples);

struct LossAndGradient {
    double loss{0.0};
    std::vector<double> gradient;
};

std::vector<double> gradient(const RegisterLayout &layout,
                             const ModelParams &params,
                             std::span<const TrainingSample> samples,
                             GradientMethod method = GradientMethod::Adjoint,
                             double fd_step = 1e-5);

/// Grouped fast paths used by the trainer.
double nll_loss(const RegisterLayout &layout, const ModelParams &params,
                const SampleGroups &groups);
LossAndGradient loss_and_gradient(const RegisterLayout &layout,
                                  const ModelParams &params,
                                  const SampleGroups &groups,
                                  GradientMethod method,
                                  double fd_step = 1e-5);

struct LossRecord {
    std::size_t step{0};
    double loss{0.0};
};

struct TrainedModel {
    RegisterLayout layout;
    ModelParams params;
    std::vector<LossRecord> loss_history; // n_steps + 1 entries
    TrainingConfig config;
    std::uint64_t seed{0};
};

/// Uniform(-pi, pi) draws from the seeded generator.
ModelParams initial_params(const RegisterLayout &layout, std::size_t n_layers,
                           std::uint64_t seed);

/// Full-batch Adam (beta1 0.9, beta2 0.999, eps 1e-8) from seeded initial
/// parameters. Throws TrainingFailure naming the step on a numerical error.
TrainedModel train(std::span<const TrainingSample> samples,
                   const RegisterLayout &layout, const TrainingConfig &config);
TrainedModel train(const DiscreteSeries &series, const RegisterLayout &layout,
                   const TrainingConfig &config,
                   const std::optional<TimeMask> &mask = std::nullopt);

/// Column j is the one-step distribution from joint state j.
Eigen::MatrixXd extract_transition_matrix(const RegisterLayout &layout,
                                          const ModelParams &params);
Eigen::MatrixXd extract_transition_matrix(const TrainedModel &model);

} // namespace tqgm
