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

#include "tqgm/prediction.hpp"

#include <cmath>
#include <stdexcept>

namespace tqgm {

std::vector<double> asset_marginal(const RegisterLayout &layout,
                                   std::span<const double> joint,
                                   std::size_t asset) {
    if (joint.size() != layout.n_joint_states()) {
        throw std::invalid_argument("joint distribution size mismatch");
    }
    std::vector<double> out(layout.levels_per_asset(), 0.0);
    for (std::size_t j = 0; j < joint.size(); ++j) {
        const auto levels = layout.decode(j);
        out[static_cast<std::size_t>(levels.at(asset))] += joint[j];
    }
    return out;
}

int argmax_level(std::span<const double> probs) {
    if (probs.empty()) {
        throw std::invalid_argument("argmax of an empty distribution");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < probs.size(); ++i) {
        if (probs[i] > probs[best]) {
            best = i;
        }
    }
    return static_cast<int>(best);
}

std::vector<StepForecast>
forecast_steps(const RegisterLayout &layout, const ModelParams &params,
               std::span<const int> initial, std::size_t horizon,
               const std::vector<std::vector<double>> &representatives) {
    const bool with_values = !representatives.empty();
    if (with_values && representatives.size() != layout.n_assets) {
        throw std::invalid_argument("need representatives for every asset");
    }
    std::vector<StepForecast> out;
    out.reserve(horizon);
    for (std::size_t k = 1; k <= horizon; ++k) {
        const auto joint =
            model_distribution(layout, params, initial, static_cast<int>(k));
        StepForecast step;
        for (std::size_t a = 0; a < layout.n_assets; ++a) {
            auto marginal = asset_marginal(layout, joint.probs, a);
            step.levels.push_back(argmax_level(marginal));
            if (with_values) {
                const auto &reps = representatives[a];
                if (reps.size() != marginal.size()) {
                    throw std::invalid_argument(
                        "representative count does not match levels");
                }
                double e = 0.0;
                for (std::size_t i = 0; i < reps.size(); ++i) {
                    e += marginal[i] * reps[i];
                }
                step.expected.push_back(e);
            }
            step.marginals.push_back(std::move(marginal));
        }
        out.push_back(std::move(step));
    }
    return out;
}

std::vector<std::vector<int>> predict_levels(const TrainedModel &model,
                                             std::span<const int> initial,
                                             std::size_t horizon) {
    std::vector<std::vector<int>> out;
    for (auto &s : forecast_steps(model.layout, model.params, initial, horizon,
                                  {})) {
        out.push_back(std::move(s.levels));
    }
    return out;
}

std::vector<std::vector<double>>
predict_point_values(const TrainedModel &model, std::span<const int> initial,
                     std::size_t horizon,
                     const std::vector<std::vector<double>> &representatives) {
    if (representatives.empty()) {
        throw std::invalid_argument("point values need representatives");
    }
    std::vector<std::vector<double>> out;
    for (auto &s : forecast_steps(model.layout, model.params, initial, horizon,
                                  representatives)) {
        out.push_back(std::move(s.expected));
    }
    return out;
}

EntropyTrace entropy_trace(const RegisterLayout &layout,
                           const ModelParams &params,
                           std::span<const int> initial, std::size_t steps) {
    EntropyTrace trace;
    trace.max_bits = static_cast<double>(layout.bits_per_asset);
    const auto kept = layout.asset_qubits(0);
    for (std::size_t t = 1; t <= steps; ++t) {
        const auto state =
            evolve_k_steps(layout, params, initial, static_cast<int>(t));
        trace.entropy_bits.push_back(qsim::von_neumann_entropy(
            qsim::reduced_density_matrix(state, kept)));
    }
    return trace;
}

EntropyTrace entropy_trace(const TrainedModel &model,
                           std::span<const int> initial, std::size_t steps) {
    return entropy_trace(model.layout, model.params, initial, steps);
}

EntropyTrace sampled_entropy_trace(const RegisterLayout &layout,
                                   const ModelParams &params,
                                   std::span<const int> initial,
                                   std::size_t steps, std::size_t shots,
                                   std::uint64_t seed) {
    EntropyTrace trace;
    trace.max_bits = static_cast<double>(layout.bits_per_asset);
    const auto kept = layout.asset_qubits(0);
    for (std::size_t t = 1; t <= steps; ++t) {
        const auto state =
            evolve_k_steps(layout, params, initial, static_cast<int>(t));
        const auto draws = qsim::sample(state, kept, shots, seed + t);
        std::vector<double> freq(layout.levels_per_asset(), 0.0);
        for (auto d : draws) {
            freq[d] += 1.0;
        }
        double h = 0.0;
        for (auto f : freq) {
            if (f > 0.0) {
                const double p = f / static_cast<double>(shots);
                h -= p * std::log2(p);
            }
        }
        trace.entropy_bits.push_back(h);
    }
    return trace;
}

} // namespace tqgm
