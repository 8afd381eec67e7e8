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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "tqgm/prediction.hpp"

using namespace tqgm;

namespace {

TrainedModel model_with(const RegisterLayout &layout, ModelParams params) {
    TrainedModel m{layout, std::move(params), {}, {}, 0};
    return m;
}

TrainedModel random_model(Rng &rng, const RegisterLayout &layout,
                          std::size_t layers) {
    return model_with(
        layout,
        ModelParams(layout.n_qubits(), layers,
                    testgen::random_angles(
                        rng, ModelParams::count(layout.n_qubits(), layers))));
}

} // namespace

TEST(Argmax, TiesGoLow) {
    const std::vector<double> p{0.1, 0.4, 0.4, 0.1};
    EXPECT_EQ(argmax_level(p), 1);
    const std::vector<double> none;
    EXPECT_THROW(argmax_level(none), std::invalid_argument);
}

TEST(Argmax, InvariantUnderMonotoneRescaling) {
    Rng rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> p(4), q(4);
        for (std::size_t i = 0; i < 4; ++i) {
            p[i] = rng.uniform();
            q[i] = std::exp(3.0 * p[i]) + 0.5;
        }
        EXPECT_EQ(argmax_level(p), argmax_level(q));
    }
}

TEST(Marginal, SumsJointOverOtherAssets) {
    RegisterLayout layout;
    std::vector<double> joint(16, 0.0);
    joint[layout.encode(std::vector<int>{1, 3})] = 0.25;
    joint[layout.encode(std::vector<int>{1, 0})] = 0.25;
    joint[layout.encode(std::vector<int>{2, 0})] = 0.5;
    EXPECT_EQ(asset_marginal(layout, joint, 0),
              (std::vector<double>{0, 0.5, 0.5, 0}));
    EXPECT_EQ(asset_marginal(layout, joint, 1),
              (std::vector<double>{0.75, 0, 0, 0.25}));
}

TEST(Predict, ZeroParamsRepeatInitial) {
    RegisterLayout layout;
    const auto m = model_with(layout, ModelParams(8, 1));
    const std::vector<int> init{2, 1};
    const auto levels = predict_levels(m, init, 10);
    ASSERT_EQ(levels.size(), 10u);
    for (const auto &l : levels) {
        EXPECT_EQ(l, init);
    }
    EXPECT_TRUE(predict_levels(m, init, 0).empty());
    const std::vector<std::vector<double>> reps{{-1, 0, 1, 2}, {5, 6, 7, 8}};
    const auto values = predict_point_values(m, init, 3, reps);
    for (const auto &v : values) {
        EXPECT_NEAR(v[0], 1.0, 1e-12);
        EXPECT_NEAR(v[1], 6.0, 1e-12);
    }
}

TEST(Predict, PointValuesAreMarginalExpectations) {
    Rng rng(14);
    RegisterLayout layout{2, 2, 2};
    const auto m = random_model(rng, layout, 2);
    const std::vector<int> init{0, 3};
    const std::vector<std::vector<double>> reps{{-1, 0, 1, 2},
                                                {0.1, 0.2, 0.4, 0.8}};
    const auto values = predict_point_values(m, init, 4, reps);
    const auto levels = predict_levels(m, init, 4);
    for (int k = 1; k <= 4; ++k) {
        const auto d = model_distribution(layout, m.params, init, k);
        for (std::size_t a = 0; a < 2; ++a) {
            std::vector<double> marg(4, 0.0);
            for (std::size_t j = 0; j < 16; ++j) {
                marg[static_cast<std::size_t>(layout.decode(j)[a])] += d[j];
            }
            double e = 0.0;
            for (std::size_t i = 0; i < 4; ++i) {
                e += marg[i] * reps[a][i];
            }
            const auto step = static_cast<std::size_t>(k - 1);
            EXPECT_NEAR(values[step][a], e, 1e-12);
            EXPECT_EQ(levels[step][a], argmax_level(marg));
        }
    }
}

TEST(Predict, LearnsDeterministicCycle) {
    RegisterLayout layout{1, 2, 2};
    std::vector<int> cycle(120);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        cycle[i] = static_cast<int>(i % 4);
    }
    DiscreteSeries s;
    s.levels = {cycle};
    s.edges = {{0.5, 1.5, 2.5}};
    s.representatives = {{0, 1, 2, 3}};
    TrainingConfig c;
    c.n_layers = 3;
    c.horizon = 4;
    c.seed = 1;
    const auto m = train(s, layout, c);
    for (int start = 0; start < 4; ++start) {
        const std::vector<int> init{start};
        const auto levels = predict_levels(m, init, 4);
        for (std::size_t k = 1; k <= 4; ++k) {
            EXPECT_EQ(levels[k - 1][0],
                      (start + static_cast<int>(k)) % 4)
                << "start " << start << " k " << k;
        }
    }
}

TEST(Entropy, ZeroParamsGiveZero) {
    RegisterLayout layout;
    const ModelParams p(8, 3);
    const std::vector<int> init{1, 2};
    const auto t = entropy_trace(layout, p, init, 5);
    ASSERT_EQ(t.entropy_bits.size(), 5u);
    EXPECT_EQ(t.max_bits, 2.0);
    for (auto h : t.entropy_bits) {
        EXPECT_NEAR(h, 0.0, 1e-9);
    }
}

TEST(Entropy, BellPairAcrossAssetCut) {
    using namespace qsim;
    // Qubit 1 (first asset) entangled with qubit 2 (second asset).
    const auto s = apply_circuit(
        StateVector(8),
        Circuit{Gate::ry(1, std::numbers::pi / 2), Gate::cnot(1, 2)});
    const std::vector<std::size_t> first_asset{0, 1};
    EXPECT_NEAR(von_neumann_entropy(reduced_density_matrix(s, first_asset)),
                1.0, 1e-9);
}

TEST(Entropy, BoundedForRandomModels) {
    Rng rng(19);
    RegisterLayout layout;
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = random_model(rng, layout, 1 + trial % 3);
        const std::vector<int> init{trial % 4, (trial / 2) % 4};
        const auto t = entropy_trace(m, init, 5);
        for (auto h : t.entropy_bits) {
            EXPECT_GE(h, -1e-12);
            EXPECT_LE(h, 2.0 + 1e-9);
        }
    }
}

TEST(Entropy, SampledEstimateTracksExact) {
    Rng rng(29);
    RegisterLayout layout{2, 2, 2};
    const auto m = random_model(rng, layout, 2);
    const std::vector<int> init{0, 1};
    const auto exact = entropy_trace(m, init, 3);
    const auto sampled =
        sampled_entropy_trace(layout, m.params, init, 3, 200000, 5);
    for (std::size_t t = 0; t < 3; ++t) {
        // Shannon entropy of the diagonal upper-bounds the von Neumann one.
        EXPECT_GE(sampled.entropy_bits[t], exact.entropy_bits[t] - 0.02);
        EXPECT_LE(sampled.entropy_bits[t], 2.0);
    }
}
