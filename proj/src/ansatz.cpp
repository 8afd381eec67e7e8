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

#include "tqgm/ansatz.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tqgm {

using qsim::Gate;

std::vector<std::size_t> RegisterLayout::target_qubits() const {
    std::vector<std::size_t> q(n_target());
    for (std::size_t i = 0; i < q.size(); ++i) {
        q[i] = i;
    }
    return q;
}

std::vector<std::size_t> RegisterLayout::asset_qubits(std::size_t a) const {
    if (a >= n_assets) {
        throw std::invalid_argument("asset index out of range");
    }
    std::vector<std::size_t> q(bits_per_asset);
    for (std::size_t i = 0; i < bits_per_asset; ++i) {
        q[i] = a * bits_per_asset + i;
    }
    return q;
}

void RegisterLayout::validate() const {
    if (n_assets == 0 || bits_per_asset == 0) {
        throw std::invalid_argument("layout needs at least one asset bit");
    }
    if (n_qubits() > qsim::kMaxQubits) {
        throw std::invalid_argument("layout exceeds the simulator limit");
    }
}

std::size_t RegisterLayout::encode(std::span<const int> levels) const {
    if (levels.size() != n_assets) {
        throw std::invalid_argument("expected " + std::to_string(n_assets) +
                                    " levels, got " +
                                    std::to_string(levels.size()));
    }
    std::size_t joint = 0;
    for (auto level : levels) {
        if (level < 0 || static_cast<std::size_t>(level) >= levels_per_asset()) {
            throw std::invalid_argument("level " + std::to_string(level) +
                                        " out of range");
        }
        joint = (joint << bits_per_asset) | static_cast<std::size_t>(level);
    }
    return joint;
}

std::vector<int> RegisterLayout::decode(std::size_t joint) const {
    std::vector<int> levels(n_assets);
    const std::size_t mask = levels_per_asset() - 1;
    for (std::size_t a = n_assets; a-- > 0;) {
        levels[a] = static_cast<int>(joint & mask);
        joint >>= bits_per_asset;
    }
    return levels;
}

ModelParams::ModelParams(std::size_t n_qubits, std::size_t n_layers)
    : ModelParams(n_qubits, n_layers,
                  std::vector<double>(count(n_qubits, n_layers), 0.0)) {}

ModelParams::ModelParams(std::size_t n_qubits, std::size_t n_layers,
                         std::vector<double> values)
    : n_qubits_(n_qubits), n_layers_(n_layers), values_(std::move(values)) {
    if (n_layers == 0) {
        throw std::invalid_argument("model needs at least one layer");
    }
    if (values_.size() != count(n_qubits, n_layers)) {
        throw std::invalid_argument("parameter vector has " +
                                    std::to_string(values_.size()) +
                                    " entries, expected " +
                                    std::to_string(count(n_qubits, n_layers)));
    }
    for (auto v : values_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("non-finite model parameter");
        }
    }
}

std::size_t entangler_range(std::size_t layer, std::size_t n_qubits) {
    return (layer % (n_qubits - 1)) + 1;
}

qsim::Circuit build_V(const ModelParams &params) {
    const std::size_t n = params.n_qubits();
    if (n < 2) {
        throw std::invalid_argument("build_V: need at least 2 qubits");
    }
    qsim::Circuit c;
    c.reserve(params.n_layers() * 2 * n);
    for (std::size_t l = 0; l < params.n_layers(); ++l) {
        for (std::size_t q = 0; q < n; ++q) {
            auto g = Gate::rot(q, params.phi(l, q, 0), params.phi(l, q, 1),
                               params.phi(l, q, 2));
            for (std::size_t j = 0; j < 3; ++j) {
                g.params[j] = qsim::ParamRef{params.phi_index(l, q, j), 1.0};
            }
            c.push_back(g);
        }
        const std::size_t r = entangler_range(l, n);
        for (std::size_t q = 0; q < n; ++q) {
            c.push_back(Gate::cnot(q, (q + r) % n));
        }
    }
    return c;
}

qsim::Circuit build_V_dagger(const ModelParams &params) {
    auto v = build_V(params);
    qsim::Circuit c;
    c.reserve(v.size());
    for (auto it = v.rbegin(); it != v.rend(); ++it) {
        c.push_back(it->inverse());
    }
    return c;
}

qsim::Circuit build_Sigma(const ModelParams &params, int k) {
    if (k < 0) {
        throw std::invalid_argument("build_Sigma: k must be >= 0");
    }
    qsim::Circuit c;
    c.reserve(params.n_qubits());
    for (std::size_t q = 0; q < params.n_qubits(); ++q) {
        auto g = Gate::rz(q, k * params.gamma(q));
        g.params[0] = qsim::ParamRef{params.gamma_index(q),
                                     static_cast<double>(k)};
        c.push_back(g);
    }
    return c;
}

qsim::Circuit encode_levels(const RegisterLayout &layout,
                            std::span<const int> levels) {
    const std::size_t joint = layout.encode(levels);
    qsim::Circuit c;
    for (std::size_t q = 0; q < layout.n_target(); ++q) {
        if ((joint >> (layout.n_target() - 1 - q)) & 1U) {
            c.push_back(Gate::x(q));
        }
    }
    return c;
}

qsim::StateVector evolve_k_steps(const RegisterLayout &layout,
                                 const ModelParams &params,
                                 std::span<const int> levels, int k) {
    layout.validate();
    if (params.n_qubits() != layout.n_qubits()) {
        throw std::invalid_argument("parameter and layout qubit counts differ");
    }
    if (k < 0) {
        throw std::invalid_argument("evolve_k_steps: k must be >= 0");
    }
    auto state = qsim::apply_circuit(qsim::StateVector(layout.n_qubits()),
                                     encode_levels(layout, levels));
    if (k == 0) {
        return state;
    }
    state = qsim::apply_circuit(std::move(state), build_V_dagger(params));
    state = qsim::apply_circuit(std::move(state), build_Sigma(params, k));
    return qsim::apply_circuit(std::move(state), build_V(params));
}

qsim::Distribution model_distribution(const RegisterLayout &layout,
                                      const ModelParams &params,
                                      std::span<const int> levels, int k) {
    const auto state = evolve_k_steps(layout, params, levels, k);
    const auto targets = layout.target_qubits();
    return qsim::born_probabilities(state, targets);
}

} // namespace tqgm
