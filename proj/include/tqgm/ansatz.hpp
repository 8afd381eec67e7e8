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
 * Parameterized circuits of the time-series generative model.
 *
 * The k-step evolution operator is U^k = V(phi) Sigma(k gamma) V^dagger(phi):
 * V is a stack of strongly-entangling layers and Sigma is a layer of RZ
 * phases, so circuit depth does not grow with k.
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tqgm/qsim.hpp"

namespace tqgm {

/// Target register (assets x bits) followed by ancilla qubits.
struct RegisterLayout {
    std::size_t n_assets{2};
    std::size_t bits_per_asset{2};
    std::size_t n_ancilla{4};

    [[nodiscard]] std::size_t n_target() const noexcept {
        return n_assets * bits_per_asset;
    }
    [[nodiscard]] std::size_t n_qubits() const noexcept {
        return n_target() + n_ancilla;
    }
    [[nodiscard]] std::size_t levels_per_asset() const noexcept {
        return std::size_t{1} << bits_per_asset;
    }
    [[nodiscard]] std::size_t n_joint_states() const noexcept {
        return std::size_t{1} << n_target();
    }

    /// Target qubits 0..n_target-1.
    [[nodiscard]] std::vector<std::size_t> target_qubits() const;
    /// Qubits holding asset `a`'s level, most significant first.
    [[nodiscard]] std::vector<std::size_t> asset_qubits(std::size_t a) const;

    /// Joint target-register index of per-asset levels (asset 0 most
    /// significant). Throws on a level outside [0, levels_per_asset).
    [[nodiscard]] std::size_t encode(std::span<const int> levels) const;
    [[nodiscard]] std::vector<int> decode(std::size_t joint) const;

    void validate() const;

    bool operator==(const RegisterLayout &) const = default;
};

/// theta = (phi, gamma) stored flat: phi[l][q][j] at (l * n + q) * 3 + j,
/// followed by gamma[q].
class ModelParams {
  public:
    ModelParams(std::size_t n_qubits, std::size_t n_layers);
    ModelParams(std::size_t n_qubits, std::size_t n_layers,
                std::vector<double> values);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t n_layers() const noexcept { return n_layers_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::size_t num_phi() const noexcept {
        return n_layers_ * n_qubits_ * 3;
    }

    [[nodiscard]] std::size_t phi_index(std::size_t layer, std::size_t qubit,
                                        std::size_t j) const noexcept {
        return (layer * n_qubits_ + qubit) * 3 + j;
    }
    [[nodiscard]] std::size_t gamma_index(std::size_t qubit) const noexcept {
        return num_phi() + qubit;
    }

    [[nodiscard]] double phi(std::size_t l, std::size_t q,
                             std::size_t j) const {
        return values_[phi_index(l, q, j)];
    }
    [[nodiscard]] double gamma(std::size_t q) const {
        return values_[gamma_index(q)];
    }

    [[nodiscard]] std::span<const double> values() const noexcept {
        return values_;
    }
    [[nodiscard]] std::span<double> values() noexcept { return values_; }

    static std::size_t count(std::size_t n_qubits, std::size_t n_layers) {
        return n_layers * n_qubits * 3 + n_qubits;
    }

  private:
    std::size_t n_qubits_;
    std::size_t n_layers_;
    std::vector<double> values_;
};

/// CNOT range for 0-based layer index `layer` on an n-qubit ring.
std::size_t entangler_range(std::size_t layer, std::size_t n_qubits);

/// V(phi): per layer, Rot on every qubit then a CNOT ring q -> q + r.
qsim::Circuit build_V(const ModelParams &params);
/// V^dagger(phi), gate order reversed and each gate inverted.
qsim::Circuit build_V_dagger(const ModelParams &params);
/// Sigma(k gamma): RZ(k gamma_q) on each qubit.
qsim::Circuit build_Sigma(const ModelParams &params, int k);

/// X gates preparing the encoded target levels; ancilla stays |0...0>.
qsim::Circuit encode_levels(const RegisterLayout &layout,
                            std::span<const int> levels);

/// [V Sigma(k gamma) V^dagger] |levels, 0...0>.
qsim::StateVector evolve_k_steps(const RegisterLayout &layout,
                                 const ModelParams &params,
                                 std::span<const int> levels, int k);

/// Born distribution of the k-step state over the target qubits.
qsim::Distribution model_distribution(const RegisterLayout &layout,
                                      const ModelParams &params,
                                      std::span<const int> levels, int k);

} // namespace tqgm
