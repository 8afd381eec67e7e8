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
#include <stdexcept>

#include <gtest/gtest.h>

#include "tqgm/baselines.hpp"
#include "tqgm/errors.hpp"
#include "tqgm/random.hpp"
#include "tqgm/synthetic.hpp"

using namespace tqgm;

namespace {

std::vector<Eigen::MatrixXd> var2_coefficients() {
    Eigen::MatrixXd a1(2, 2), a2(2, 2);
    a1 << 0.5, 0.1, 0.0, 0.4;
    a2 << -0.3, 0.0, 0.1, -0.2;
    return {a1, a2};
}

} // namespace

TEST(Var, RecoversSimulatedVar2) {
    const auto coeffs = var2_coefficients();
    Eigen::VectorXd c(2);
    c << 0.2, -0.1;
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto y = synthetic::simulate_var(coeffs, c, 1.0, 1000, seed);
        const auto m = fit_var(y, 10);
        if (m.p == 2) {
            ++hits;
            for (std::size_t lag = 0; lag < 2; ++lag) {
                EXPECT_LT((m.coefficients[lag] - coeffs[lag])
                              .cwiseAbs()
                              .maxCoeff(),
                          0.1);
            }
        }
        EXPECT_EQ(m.aic_by_order.size(), 10u);
    }
    EXPECT_GE(hits, 4);
}

TEST(Var, WhiteNoiseForecastsNearMean) {
    Rng rng(4);
    Eigen::MatrixXd y(600, 2);
    for (Eigen::Index t = 0; t < y.rows(); ++t) {
        y(t, 0) = 1.0 + rng.normal();
        y(t, 1) = -2.0 + rng.normal();
    }
    const auto m = fit_var(y, 10);
    EXPECT_LE(m.p, 2u);
    const auto fc = forecast_var(m, y, 10);
    const Eigen::VectorXd mean = y.colwise().mean().transpose();
    EXPECT_LT((fc.row(9).transpose() - mean).cwiseAbs().maxCoeff(), 0.2);
}

// Residuals of an OLS fit are orthogonal to every regressor.
TEST(Var, ResidualsOrthogonalToRegressors) {
    const auto y = synthetic::simulate_var(var2_coefficients(),
                                           Eigen::VectorXd::Zero(2), 0.5, 300,
                                           9);
    const auto m = fit_var_order(y, 3, 3);
    const auto n = m.residuals.rows();
    ASSERT_EQ(n, y.rows() - 3);
    for (Eigen::Index i = 0; i < 2; ++i) {
        EXPECT_NEAR(m.residuals.col(i).sum(), 0.0, 1e-9);
        for (std::size_t lag = 1; lag <= 3; ++lag) {
            for (Eigen::Index j = 0; j < 2; ++j) {
                const Eigen::VectorXd x = y.block(
                    3 - static_cast<Eigen::Index>(lag), j, n, 1);
                EXPECT_NEAR(m.residuals.col(i).dot(x), 0.0, 1e-8);
            }
        }
    }
}

TEST(Var, ForecastRecursionByHand) {
    VarModel m;
    m.p = 1;
    m.coefficients = {0.5 * Eigen::MatrixXd::Identity(2, 2)};
    m.intercept = Eigen::VectorXd::Zero(2);
    Eigen::MatrixXd h(1, 2);
    h << 1.0, 1.0;
    const auto fc = forecast_var(m, h, 4);
    for (Eigen::Index s = 0; s < 4; ++s) {
        const double v = std::pow(0.5, static_cast<double>(s + 1));
        EXPECT_DOUBLE_EQ(fc(s, 0), v);
        EXPECT_DOUBLE_EQ(fc(s, 1), v);
    }
    EXPECT_EQ(forecast_var(m, h, 0).rows(), 0);

    m.coefficients = {Eigen::MatrixXd::Zero(2, 2)};
    m.intercept = Eigen::Vector2d(3.0, -1.0);
    const auto flat = forecast_var(m, h, 3);
    for (Eigen::Index s = 0; s < 3; ++s) {
        EXPECT_EQ(flat(s, 0), 3.0);
        EXPECT_EQ(flat(s, 1), -1.0);
    }
}

// An explosive process is fitted as-is; no stability check is imposed.
TEST(Var, NonStationaryPassesThrough) {
    Eigen::MatrixXd y(200, 1);
    Rng rng(2);
    y(0, 0) = 1.0;
    for (Eigen::Index t = 1; t < y.rows(); ++t) {
        y(t, 0) = 1.02 * y(t - 1, 0) + 0.01 * rng.normal();
    }
    const auto m = fit_var_order(y, 1, 1);
    EXPECT_GT(m.coefficients[0](0, 0), 1.0);
}

TEST(Var, Errors) {
    Eigen::MatrixXd short_series = Eigen::MatrixXd::Random(20, 2);
    EXPECT_THROW(fit_var(short_series, 50), std::invalid_argument);
    EXPECT_THROW(fit_var(short_series, 0), std::invalid_argument);
    Eigen::MatrixXd constant = Eigen::MatrixXd::Ones(100, 2);
    EXPECT_THROW(fit_var_order(constant, 1, 1), RankDeficiency);
}

TEST(Var, PeriodicDataSkipsSingularOrders) {
    Eigen::MatrixXd y(120, 2);
    const double r[4] = {-0.02, -0.01, 0.01, 0.02};
    for (Eigen::Index t = 0; t < y.rows(); ++t) {
        y(t, 0) = r[t % 4];
        y(t, 1) = r[(t + 2) % 4];
    }
    const auto m = fit_var(y, 5);
    EXPECT_GE(m.p, 1u);
    EXPECT_TRUE(std::isinf(m.aic_by_order.back()));
}

TEST(Naive, Examples) {
    const std::vector<double> p{98, 99, 100};
    EXPECT_EQ(naive_forecast(p, 3), (std::vector<double>{100, 100, 100}));
    EXPECT_TRUE(naive_forecast(p, 0).empty());
    const std::vector<double> none;
    EXPECT_THROW(naive_forecast(none, 3), std::invalid_argument);
}
