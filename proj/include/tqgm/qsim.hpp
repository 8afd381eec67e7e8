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
 * Dense statevector simulator.
 *
 * Qubit 0 is the most significant bit of a basis-state index, so for an
 * n-qubit register the basis index of bits b_0 b_1 ... b_{n-1} is
 * sum_i b_i 2^(n-1-i). Every module in the library uses this ordering.
 */
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace tqgm::qsim {

using Complex = std::complex<double>;
using Matrix2 = std::array<Complex, 4>; // row-major 2x2

inline constexpr std::size_t kMaxQubits = 20;

class StateVector {
  public:
    /// |0...0> on `n_qubits` qubits.
    explicit StateVector(std::size_t n_qubits);
    StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes);

    static StateVector basis(std::size_t n_qubits, std::size_t index);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amps_; }
    [[nodiscard]] const Complex &operator[](std::size_t i) const {
        return amps_[i];
    }

    [[nodiscard]] double squared_norm() const noexcept;

  private:
    std::size_t n_qubits_;
    std::vector<Complex> amps_;
};

/// Bitstring input: one entry per qubit, qubit 0 first.
StateVector init_basis_state(std::size_t n_qubits,
                             std::span<const std::uint8_t> bitstring);

/// Basis index of a bitstring under the MSB-first convention.
std::size_t bitstring_to_index(std::span<const std::uint8_t> bitstring);
std::vector<std::uint8_t> index_to_bitstring(std::size_t index,
                                             std::size_t n_bits);

enum class GateKind { X, RX, RY, RZ, Rot, CNOT };

/// Which trainable parameter drives an angle: angle = scale * theta[index].
struct ParamRef {
    std::size_t index;
    double scale;
};

/**
 * A gate instance. `wires[0]` is the target of single-qubit gates and the
 * control of CNOT (`wires[1]` is then the target). Rot(a, b, c) is the
 * matrix product RZ(c) RY(b) RZ(a), so RZ(a) acts first.
 */
struct Gate {
    GateKind kind{GateKind::X};
    std::array<std::size_t, 2> wires{};
    std::array<double, 3> angles{};
    std::array<std::optional<ParamRef>, 3> params{};

    static Gate x(std::size_t q);
    static Gate rx(std::size_t q, double angle);
    static Gate ry(std::size_t q, double angle);
    static Gate rz(std::size_t q, double angle);
    static Gate rot(std::size_t q, double a, double b, double c);
    static Gate cnot(std::size_t control, std::size_t target);

    [[nodiscard]] std::size_t arity() const noexcept {
        return kind == GateKind::CNOT ? 2 : 1;
    }
    [[nodiscard]] std::size_t num_angles() const noexcept;

    /// G^dagger, with parameter references carried over (scales negated).
    [[nodiscard]] Gate inverse() const;
};

using Circuit = std::vector<Gate>;

/// 2x2 matrix of a single-qubit gate.
Matrix2 single_qubit_matrix(const Gate &gate);

/// Full 2^arity unitary of the gate in its own wire ordering
/// (wires[0] is the more significant bit).
Eigen::MatrixXcd gate_unitary(const Gate &gate);

void validate_gate(const Gate &gate, std::size_t n_qubits);

StateVector apply_gate(StateVector state, const Gate &gate);
StateVector apply_circuit(StateVector state, std::span<const Gate> circuit);

/// In-place kernels used by the hot paths. Wires are assumed validated.
void apply_gate_inplace(std::span<Complex> amps, std::size_t n_qubits,
                        const Gate &gate);
void apply_matrix2_inplace(std::span<Complex> amps, std::size_t n_qubits,
                           std::size_t wire, const Matrix2 &m);
void apply_cnot_inplace(std::span<Complex> amps, std::size_t n_qubits,
                        std::size_t control, std::size_t target);
void apply_rz_inplace(std::span<Complex> amps, std::size_t n_qubits,
                      std::size_t wire, double angle);
void apply_ry_inplace(std::span<Complex> amps, std::size_t n_qubits,
                      std::size_t wire, double angle);

/// Probability vector over the joint outcomes of some set of qubits.
struct Distribution {
    std::vector<double> probs;

    [[nodiscard]] std::size_t size() const noexcept { return probs.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return probs[i]; }
    [[nodiscard]] double total() const noexcept;
};

/// Outcome index b of the result uses the MSB-first convention over
/// `measured` in the order given.
Distribution born_probabilities(const StateVector &state,
                                std::span<const std::size_t> measured);

/// Same, reading raw amplitudes (no ownership).
Distribution born_probabilities(std::span<const Complex> amps,
                                std::size_t n_qubits,
                                std::span<const std::size_t> measured);

/// Returns outcome indices over `measured` (MSB-first bitstrings).
std::vector<std::uint64_t> sample(const StateVector &state,
                                  std::span<const std::size_t> measured,
                                  std::size_t n_shots, std::uint64_t seed);

class DensityMatrix {
  public:
    DensityMatrix(std::size_t n_qubits, Eigen::MatrixXcd entries);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] const Eigen::MatrixXcd &entries() const noexcept {
        return rho_;
    }

  private:
    std::size_t n_qubits_;
    Eigen::MatrixXcd rho_;
};

/// Partial trace over every qubit not in `kept`. The result's qubit order
/// follows `kept`.
DensityMatrix reduced_density_matrix(const StateVector &state,
                                     std::span<const std::size_t> kept);

/// Entropy in bits; eigenvalues at or below 1e-12 contribute nothing.
double von_neumann_entropy(const DensityMatrix &rho);

} // namespace tqgm::qsim
