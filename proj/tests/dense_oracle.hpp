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

// Reference simulator for tests: builds the full 2^n x 2^n unitary from
// Kronecker products and multiplies. Slow, obviously correct, and shares no
// code with the library kernels.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "tqgm/ansatz.hpp"
#include "tqgm/qsim.hpp"

namespace dense {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using C = std::complex<double>;

inline Mat mat2(C a, C b, C c, C d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

inline Mat identity2() { return Mat::Identity(2, 2); }
inline Mat pauli_x() { return mat2(0, 1, 1, 0); }

inline Mat rz(double t) {
    return mat2(std::exp(C(0, -t / 2)), 0, 0, std::exp(C(0, t / 2)));
}
inline Mat ry(double t) {
    return mat2(std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2),
                std::cos(t / 2));
}
inline Mat rx(double t) {
    return mat2(std::cos(t / 2), C(0, -std::sin(t / 2)),
                C(0, -std::sin(t / 2)), std::cos(t / 2));
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

// Qubit 0 is the leftmost Kronecker factor.
inline Mat embed(const Mat &u, std::size_t wire, std::size_t n) {
    Mat out = Mat::Identity(1, 1);
    for (std::size_t q = 0; q < n; ++q) {
        out = kron(out, q == wire ? u : identity2());
    }
    return out;
}

inline Mat cnot(std::size_t control, std::size_t target, std::size_t n) {
    Mat p0 = mat2(1, 0, 0, 0);
    Mat p1 = mat2(0, 0, 0, 1);
    Mat a = Mat::Identity(1, 1);
    Mat b = Mat::Identity(1, 1);
    for (std::size_t q = 0; q < n; ++q) {
        a = kron(a, q == control ? p0 : identity2());
        b = kron(b, q == control ? p1 : (q == target ? pauli_x()
                                                       : identity2()));
    }
    return a + b;
}

inline Mat gate_matrix(const tqgm::qsim::Gate &g, std::size_t n) {
    using tqgm::qsim::GateKind;
    const auto q = g.wires[0];
    switch (g.kind) {
    case GateKind::X:
        return embed(pauli_x(), q, n);
    case GateKind::RX:
        return embed(rx(g.angles[0]), q, n);
    case GateKind::RY:
        return embed(ry(g.angles[0]), q, n);
    case GateKind::RZ:
        return embed(rz(g.angles[0]), q, n);
    case GateKind::Rot:
        return embed(rz(g.angles[2]) * ry(g.angles[1]) * rz(g.angles[0]), q,
                     n);
    case GateKind::CNOT:
        return cnot(g.wires[0], g.wires[1], n);
    }
    return {};
}

inline Mat circuit_matrix(const tqgm::qsim::Circuit &c, std::size_t n) {
    Mat u = Mat::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (const auto &g : c) {
        u = gate_matrix(g, n) * u;
    }
    return u;
}

inline Vec to_vec(const tqgm::qsim::StateVector &s) {
    Vec v(static_cast<Eigen::Index>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = s[i];
    }
    return v;
}

inline double max_abs_diff(const Vec &a, const tqgm::qsim::StateVector &b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        worst = std::max(worst,
                         std::abs(a(static_cast<Eigen::Index>(i)) - b[i]));
    }
    return worst;
}

// One step of V Sigma(gamma) V^dagger, built from dense matrices directly.
inline Mat model_step(const tqgm::ModelParams &p) {
    const auto n = p.n_qubits();
    Mat v = Mat::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (std::size_t l = 0; l < p.n_layers(); ++l) {
        for (std::size_t q = 0; q < n; ++q) {
            v = embed(rz(p.phi(l, q, 2)) * ry(p.phi(l, q, 1)) *
                          rz(p.phi(l, q, 0)),
                      q, n) *
                v;
        }
        const std::size_t r = (l % (n - 1)) + 1;
        for (std::size_t q = 0; q < n; ++q) {
            v = cnot(q, (q + r) % n, n) * v;
        }
    }
    Mat sigma = Mat::Identity(1, 1);
    for (std::size_t q = 0; q < n; ++q) {
        sigma = kron(sigma, rz(p.gamma(q)));
    }
    return v * sigma * v.adjoint();
}

} // namespace dense
