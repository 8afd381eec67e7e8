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

#include "tqgm/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tqgm/random.hpp"

namespace tqgm::qsim {
namespace {

constexpr Complex kI{0.0, 1.0};

void check_qubit_count(std::size_t n_qubits) {
    if (n_qubits == 0 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in [1, " +
                                    std::to_string(kMaxQubits) + "], got " +
                                    std::to_string(n_qubits));
    }
}

// Bit mask of a wire under the MSB-first convention.
inline std::size_t wire_mask(std::size_t n_qubits, std::size_t wire) {
    return std::size_t{1} << (n_qubits - 1 - wire);
}

void check_wire_list(std::span<const std::size_t> wires, std::size_t n_qubits,
                     const char *what) {
    if (wires.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty qubit list");
    }
    std::vector<bool> seen(n_qubits, false);
    for (auto w : wires) {
        if (w >= n_qubits) {
            throw std::invalid_argument(std::string(what) + ": qubit " +
                                        std::to_string(w) + " out of range");
        }
        if (seen[w]) {
            throw std::invalid_argument(std::string(what) +
                                        ": duplicate qubit " +
                                        std::to_string(w));
        }
        seen[w] = true;
    }
}

// Outcome index over `wires` for a full-register basis index.
std::size_t project_index(std::size_t full, std::size_t n_qubits,
                          std::span<const std::size_t> wires) {
    std::size_t out = 0;
    for (auto w : wires) {
        out = (out << 1) | ((full & wire_mask(n_qubits, w)) ? 1U : 0U);
    }
    return out;
}

} // namespace

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
    check_qubit_count(n_qubits);
    amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    check_qubit_count(n_qubits);
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("amplitude count " +
                                    std::to_string(amps_.size()) +
                                    " does not match 2^" +
                                    std::to_string(n_qubits));
    }
    if (std::abs(squared_norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("state is not normalized");
    }
}

StateVector StateVector::basis(std::size_t n_qubits, std::size_t index) {
    StateVector s(n_qubits);
    if (index >= s.size()) {
        throw std::invalid_argument("basis index out of range");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

double StateVector::squared_norm() const noexcept {
    double acc = 0.0;
    for (const auto &a : amps_) {
        acc += std::norm(a);
    }
    return acc;
}

std::size_t bitstring_to_index(std::span<const std::uint8_t> bitstring) {
    std::size_t index = 0;
    for (auto b : bitstring) {
        if (b > 1) {
            throw std::invalid_argument("bitstring entries must be 0 or 1");
        }
        index = (index << 1) | b;
    }
    return index;
}

std::vector<std::uint8_t> index_to_bitstring(std::size_t index,
                                             std::size_t n_bits) {
    std::vector<std::uint8_t> bits(n_bits);
    for (std::size_t i = 0; i < n_bits; ++i) {
        bits[i] = static_cast<std::uint8_t>((index >> (n_bits - 1 - i)) & 1U);
    }
    return bits;
}

StateVector init_basis_state(std::size_t n_qubits,
                             std::span<const std::uint8_t> bitstring) {
    if (bitstring.size() != n_qubits) {
        throw std::invalid_argument("bitstring length " +
                                    std::to_string(bitstring.size()) +
                                    " does not match qubit count " +
                                    std::to_string(n_qubits));
    }
    return StateVector::basis(n_qubits, bitstring_to_index(bitstring));
}

// ---------------------------------------------------------------------------
// Gates

Gate Gate::x(std::size_t q) {
    Gate g;
    g.kind = GateKind::X;
    g.wires = {q, 0};
    return g;
}

Gate Gate::rx(std::size_t q, double angle) {
    Gate g;
    g.kind = GateKind::RX;
    g.wires = {q, 0};
    g.angles[0] = angle;
    return g;
}

Gate Gate::ry(std::size_t q, double angle) {
    Gate g = rx(q, angle);
    g.kind = GateKind::RY;
    return g;
}

Gate Gate::rz(std::size_t q, double angle) {
    Gate g = rx(q, angle);
    g.kind = GateKind::RZ;
    return g;
}

Gate Gate::rot(std::size_t q, double a, double b, double c) {
    Gate g;
    g.kind = GateKind::Rot;
    g.wires = {q, 0};
    g.angles = {a, b, c};
    return g;
}

Gate Gate::cnot(std::size_t control, std::size_t target) {
    Gate g;
    g.kind = GateKind::CNOT;
    g.wires = {control, target};
    return g;
}

std::size_t Gate::num_angles() const noexcept {
    switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
        return 1;
    case GateKind::Rot:
        return 3;
    default:
        return 0;
    }
}

Gate Gate::inverse() const {
    Gate g = *this;
    auto negate = [](std::optional<ParamRef> p) {
        if (p) {
            p->scale = -p->scale;
        }
        return p;
    };
    switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
        g.angles[0] = -angles[0];
        g.params[0] = negate(params[0]);
        break;
    case GateKind::Rot:
        // (RZ(c) RY(b) RZ(a))^dagger = RZ(-a) RY(-b) RZ(-c) = Rot(-c, -b, -a)
        g.angles = {-angles[2], -angles[1], -angles[0]};
        g.params = {negate(params[2]), negate(params[1]), negate(params[0])};
        break;
    default:
        break;
    }
    return g;
}

namespace {

Matrix2 mul(const Matrix2 &a, const Matrix2 &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Matrix2 rz_matrix(double t) {
    return {std::exp(-kI * (t / 2)), 0.0, 0.0, std::exp(kI * (t / 2))};
}

Matrix2 ry_matrix(double t) {
    const double c = std::cos(t / 2);
    const double s = std::sin(t / 2);
    return {c, -s, s, c};
}

Matrix2 rx_matrix(double t) {
    const double c = std::cos(t / 2);
    const double s = std::sin(t / 2);
    return {c, -kI * s, -kI * s, c};
}

} // namespace

Matrix2 single_qubit_matrix(const Gate &gate) {
    switch (gate.kind) {
    case GateKind::X:
        return {0.0, 1.0, 1.0, 0.0};
    case GateKind::RX:
        return rx_matrix(gate.angles[0]);
    case GateKind::RY:
        return ry_matrix(gate.angles[0]);
    case GateKind::RZ:
        return rz_matrix(gate.angles[0]);
    case GateKind::Rot:
        return mul(rz_matrix(gate.angles[2]),
                   mul(ry_matrix(gate.angles[1]), rz_matrix(gate.angles[0])));
    case GateKind::CNOT:
        break;
    }
    throw std::invalid_argument("CNOT is not a single-qubit gate");
}

Eigen::MatrixXcd gate_unitary(const Gate &gate) {
    if (gate.kind == GateKind::CNOT) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
        m(0, 0) = m(1, 1) = 1.0;
        m(2, 3) = m(3, 2) = 1.0;
        return m;
    }
    const auto u = single_qubit_matrix(gate);
    Eigen::MatrixXcd m(2, 2);
    m << u[0], u[1], u[2], u[3];
    return m;
}

void validate_gate(const Gate &gate, std::size_t n_qubits) {
    for (std::size_t i = 0; i < gate.arity(); ++i) {
        if (gate.wires[i] >= n_qubits) {
            throw std::invalid_argument(
                "gate wire " + std::to_string(gate.wires[i]) +
                " out of range for " + std::to_string(n_qubits) + " qubits");
        }
    }
    if (gate.kind == GateKind::CNOT && gate.wires[0] == gate.wires[1]) {
        throw std::invalid_argument("CNOT control and target coincide");
    }
    for (std::size_t i = 0; i < gate.num_angles(); ++i) {
        if (!std::isfinite(gate.angles[i])) {
            throw std::invalid_argument("non-finite gate angle");
        }
    }
}

void apply_matrix2_inplace(std::span<Complex> amps, std::size_t n_qubits,
                           std::size_t wire, const Matrix2 &m) {
    const std::size_t mask = wire_mask(n_qubits, wire);
    const std::size_t dim = amps.size();
    for (std::size_t base = 0; base < dim; base += 2 * mask) {
        for (std::size_t i = base; i < base + mask; ++i) {
            const Complex a0 = amps[i];
            const Complex a1 = amps[i + mask];
            amps[i] = m[0] * a0 + m[1] * a1;
            amps[i + mask] = m[2] * a0 + m[3] * a1;
        }
    }
}

void apply_rz_inplace(std::span<Complex> amps, std::size_t n_qubits,
                      std::size_t wire, double angle) {
    const std::size_t mask = wire_mask(n_qubits, wire);
    const Complex lo = std::polar(1.0, -angle / 2);
    const Complex hi = std::conj(lo);
    const std::size_t dim = amps.size();
    for (std::size_t base = 0; base < dim; base += 2 * mask) {
        for (std::size_t i = base; i < base + mask; ++i) {
            amps[i] *= lo;
            amps[i + mask] *= hi;
        }
    }
}

void apply_ry_inplace(std::span<Complex> amps, std::size_t n_qubits,
                      std::size_t wire, double angle) {
    const std::size_t mask = wire_mask(n_qubits, wire);
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    const std::size_t dim = amps.size();
    for (std::size_t base = 0; base < dim; base += 2 * mask) {
        for (std::size_t i = base; i < base + mask; ++i) {
            const Complex a0 = amps[i];
            const Complex a1 = amps[i + mask];
            amps[i] = c * a0 - s * a1;
            amps[i + mask] = s * a0 + c * a1;
        }
    }
}

void apply_cnot_inplace(std::span<Complex> amps, std::size_t n_qubits,
                        std::size_t control, std::size_t target) {
    const std::size_t cmask = wire_mask(n_qubits, control);
    const std::size_t tmask = wire_mask(n_qubits, target);
    const std::size_t dim = amps.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amps[i], amps[i | tmask]);
        }
    }
}

void apply_gate_inplace(std::span<Complex> amps, std::size_t n_qubits,
                        const Gate &gate) {
    switch (gate.kind) {
    case GateKind::CNOT:
        apply_cnot_inplace(amps, n_qubits, gate.wires[0], gate.wires[1]);
        return;
    case GateKind::RZ:
        apply_rz_inplace(amps, n_qubits, gate.wires[0], gate.angles[0]);
        return;
    case GateKind::RY:
        apply_ry_inplace(amps, n_qubits, gate.wires[0], gate.angles[0]);
        return;
    default:
        apply_matrix2_inplace(amps, n_qubits, gate.wires[0],
                              single_qubit_matrix(gate));
        return;
    }
}

StateVector apply_gate(StateVector state, const Gate &gate) {
    validate_gate(gate, state.num_qubits());
    apply_gate_inplace(state.amplitudes(), state.num_qubits(), gate);
    return state;
}

StateVector apply_circuit(StateVector state, std::span<const Gate> circuit) {
    for (const auto &g : circuit) {
        validate_gate(g, state.num_qubits());
    }
    for (const auto &g : circuit) {
        apply_gate_inplace(state.amplitudes(), state.num_qubits(), g);
    }
    return state;
}

// ---------------------------------------------------------------------------
// Measurement

double Distribution::total() const noexcept {
    double acc = 0.0;
    for (auto p : probs) {
        acc += p;
    }
    return acc;
}

Distribution born_probabilities(std::span<const Complex> amps,
                                std::size_t n_qubits,
                                std::span<const std::size_t> measured) {
    check_wire_list(measured, n_qubits, "born_probabilities");
    Distribution d;
    d.probs.assign(std::size_t{1} << measured.size(), 0.0);

    // Fast path: a leading contiguous block 0..m-1 maps to the high bits.
    bool leading = true;
    for (std::size_t i = 0; i < measured.size(); ++i) {
        leading = leading && measured[i] == i;
    }
    if (leading) {
        const std::size_t shift = n_qubits - measured.size();
        for (std::size_t i = 0; i < amps.size(); ++i) {
            d.probs[i >> shift] += std::norm(amps[i]);
        }
        return d;
    }
    for (std::size_t i = 0; i < amps.size(); ++i) {
        d.probs[project_index(i, n_qubits, measured)] += std::norm(amps[i]);
    }
    return d;
}

Distribution born_probabilities(const StateVector &state,
                                std::span<const std::size_t> measured) {
    return born_probabilities(state.amplitudes(), state.num_qubits(),
                              measured);
}

std::vector<std::uint64_t> sample(const StateVector &state,
                                  std::span<const std::size_t> measured,
                                  std::size_t n_shots, std::uint64_t seed) {
    if (n_shots == 0) {
        throw std::invalid_argument("sample: n_shots must be >= 1");
    }
    const auto dist = born_probabilities(state, measured);
    std::vector<double> cdf(dist.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        acc += dist[i];
        cdf[i] = acc;
    }
    Rng rng(seed);
    std::vector<std::uint64_t> out(n_shots);
    for (auto &o : out) {
        const double u = rng.uniform() * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        auto idx = static_cast<std::size_t>(it - cdf.begin());
        // Zero-probability tail entries share the last cdf value.
        idx = std::min(idx, cdf.size() - 1);
        while (idx > 0 && dist[idx] == 0.0) {
            --idx;
        }
        o = idx;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Density matrices

DensityMatrix::DensityMatrix(std::size_t n_qubits, Eigen::MatrixXcd entries)
    : n_qubits_(n_qubits), rho_(std::move(entries)) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    if (rho_.rows() != dim || rho_.cols() != dim) {
        throw std::invalid_argument("density matrix must be 2^n x 2^n");
    }
}

DensityMatrix reduced_density_matrix(const StateVector &state,
                                     std::span<const std::size_t> kept) {
    const std::size_t n = state.num_qubits();
    check_wire_list(kept, n, "reduced_density_matrix");

    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n; ++q) {
        if (std::find(kept.begin(), kept.end(), q) == kept.end()) {
            traced.push_back(q);
        }
    }
    // Reshape psi into M[kept_index, traced_index]; rho = M M^dagger.
    const auto dk = static_cast<Eigen::Index>(std::size_t{1} << kept.size());
    const auto dt = static_cast<Eigen::Index>(std::size_t{1} << traced.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dk, dt);
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(project_index(i, n, kept));
        const auto c = traced.empty() ? Eigen::Index{0}
                                      : static_cast<Eigen::Index>(
                                            project_index(i, n, traced));
        m(r, c) = amps[i];
    }
    return DensityMatrix(kept.size(), m * m.adjoint());
}

double von_neumann_entropy(const DensityMatrix &rho) {
    const auto &m = rho.entries();
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("von_neumann_entropy: matrix is not "
                                    "Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        m, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = solver.eigenvalues()[i];
        if (lambda > 1e-12) {
            s -= lambda * std::log2(lambda);
        }
    }
    return std::max(s, 0.0);
}

} // namespace tqgm::qsim
