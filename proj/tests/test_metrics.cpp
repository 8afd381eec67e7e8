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

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "tqgm/metrics.hpp"
#include "tqgm/random.hpp"

using namespace tqgm;

TEST(Mse, Examples) {
    const std::vector<double> a{1, 2, 3};
    EXPECT_EQ(mse_price(a, a), 0.0);
    std::vector<double> p(10, 5.0), q(10, 6.0);
    EXPECT_EQ(mse_price(p, q), 1.0);
    const std::vector<double> x{1, 2}, y{2, 4};
    EXPECT_EQ(mse_price(x, y), 2.5);
    EXPECT_THROW(mse_price(x, a), std::invalid_argument);
}

TEST(D1, HandExamples) {
    const std::vector<int> same{0, 1, 2, 3};
    EXPECT_EQ(manhattan_d1(same, same, D1Variant::Mean), 0.0);
    EXPECT_EQ(manhattan_d1(same, same, D1Variant::Sum), 0.0);
    const std::vector<int> zeros(10, 0), threes(10, 3);
    EXPECT_EQ(manhattan_d1(zeros, threes, D1Variant::Mean), 3.0);
    EXPECT_EQ(manhattan_d1(zeros, threes, D1Variant::Sum), 30.0);
    const std::vector<int> x{0, 1, 2, 3, 0, 1, 2, 3, 0, 1};
    const std::vector<int> ones(10, 1);
    // |x - y| = 1,0,1,2,1,0,1,2,1,0
    EXPECT_EQ(manhattan_d1(x, ones, D1Variant::Sum), 9.0);
    EXPECT_DOUBLE_EQ(manhattan_d1(x, ones, D1Variant::Mean), 0.9);
}

TEST(D1, Errors) {
    const std::vector<int> a{0, 4}, b{0, 0}, c{0};
    EXPECT_THROW(manhattan_d1(a, b, D1Variant::Sum), std::invalid_argument);
    EXPECT_THROW(manhattan_d1(b, c, D1Variant::Sum), std::invalid_argument);
    const std::vector<int> neg{-1, 0};
    EXPECT_THROW(manhattan_d1(neg, b, D1Variant::Mean), std::invalid_argument);
}

TEST(D1, SumIsLengthTimesMean) {
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> x(10), y(10);
        for (std::size_t i = 0; i < 10; ++i) {
            x[i] = static_cast<int>(rng.next() % 4);
            y[i] = static_cast<int>(rng.next() % 4);
        }
        EXPECT_EQ(manhattan_d1(x, y, D1Variant::Sum),
                  10.0 * manhattan_d1(x, y, D1Variant::Mean));
    }
}

TEST(CumulativeFit, ConstantErrorIsExactLine) {
    const std::vector<int> x(10, 0), y(10, 1);
    const auto f = cumulative_fit(x, y);
    EXPECT_NEAR(f.slope, 1.0, 1e-12);
    EXPECT_NEAR(f.intercept, 0.0, 1e-12);
    EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
    EXPECT_EQ(f.curve.back(), 10.0);
}

TEST(CumulativeFit, IdenticalSequencesAreFlat) {
    const std::vector<int> x{0, 1, 2, 3};
    const auto f = cumulative_fit(x, x);
    EXPECT_EQ(f.slope, 0.0);
    EXPECT_EQ(f.r_squared, 1.0);
    const std::vector<int> one{1};
    EXPECT_THROW(cumulative_fit(one, one), std::invalid_argument);
}

// Least squares solved independently with a QR of the [j 1] design.
TEST(CumulativeFit, MatchesLeastSquaresOracle) {
    Rng rng(88);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.next() % 30;
        std::vector<int> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = static_cast<int>(rng.next() % 4);
            y[i] = static_cast<int>(rng.next() % 4);
        }
        Eigen::MatrixXd a(static_cast<Eigen::Index>(n), 2);
        Eigen::VectorXd c(static_cast<Eigen::Index>(n));
        double run = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            run += std::abs(x[i] - y[i]);
            a(static_cast<Eigen::Index>(i), 0) = static_cast<double>(i + 1);
            a(static_cast<Eigen::Index>(i), 1) = 1.0;
            c(static_cast<Eigen::Index>(i)) = run;
        }
        const Eigen::Vector2d beta = a.householderQr().solve(c);
        const double tss = (c.array() - c.mean()).square().sum();
        if (tss == 0.0) {
            continue;
        }
        const double r2 = 1.0 - (c - a * beta).squaredNorm() / tss;
        const auto f = cumulative_fit(x, y);
        EXPECT_NEAR(f.slope, beta(0), 1e-9);
        EXPECT_NEAR(f.intercept, beta(1), 1e-9);
        EXPECT_NEAR(f.r_squared, r2, 1e-9);
    }
}

TEST(Summary, PopulationStd) {
    const std::vector<double> v{1, 2, 3, 4};
    const auto s = summarize(v);
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_DOUBLE_EQ(s.std, std::sqrt(1.25));
    const std::vector<double> one{7};
    EXPECT_EQ(summarize(one).std, 0.0);
}
