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

// Small seeded generators shared by the property tests.

#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

#include "tqgm/qsim.hpp"
#include "tqgm/random.hpp"

namespace testgen {

inline tqgm::qsim::Circuit random_circuit(tqgm::Rng &rng, std::size_t n,
                                          std::size_t n_gates) {
    using tqgm::qsim::Gate;
    const double pi = std::numbers::pi;
    tqgm::qsim::Circuit c;
    for (std::size_t i = 0; i < n_gates; ++i) {
        const auto q = static_cast<std::size_t>(rng.next() % n);
        const auto pick = n > 1 ? rng.next() % 6 : rng.next() % 5;
        switch (pick) {
        case 0:
            c.push_back(Gate::x(q));
            break;
        case 1:
            c.push_back(Gate::rx(q, rng.uniform(-pi, pi)));
            break;
        case 2:
            c.push_back(Gate::ry(q, rng.uniform(-pi, pi)));
            break;
        case 3:
            c.push_back(Gate::rz(q, rng.uniform(-pi, pi)));
            break;
        case 4:
            c.push_back(Gate::rot(q, rng.uniform(-pi, pi), rng.uniform(-pi, pi),
                                  rng.uniform(-pi, pi)));
            break;
        default: {
            auto t = static_cast<std::size_t>(rng.next() % (n - 1));
            if (t >= q) {
                ++t;
            }
            c.push_back(Gate::cnot(q, t));
        }
        }
    }
    return c;
}

inline tqgm::qsim::StateVector random_state(tqgm::Rng &rng, std::size_t n) {
    std::vector<tqgm::qsim::Complex> amps(std::size_t{1} << n);
    double norm = 0.0;
    for (auto &a : amps) {
        a = {rng.normal(), rng.normal()};
        norm += std::norm(a);
    }
    for (auto &a : amps) {
        a /= std::sqrt(norm);
    }
    return tqgm::qsim::StateVector(n, std::move(amps));
}

inline std::vector<double> random_angles(tqgm::Rng &rng, std::size_t count) {
    std::vector<double> v(count);
    for (auto &x : v) {
        x = rng.uniform(-std::numbers::pi, std::numbers::pi);
    }
    return v;
}

} // namespace testgen
