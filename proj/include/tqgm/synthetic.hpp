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
 * Seeded synthetic data: correlated geometric random walks on a weekday
 * calendar, discrete Markov chains, and simulated VAR processes.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tqgm/market_data.hpp"

namespace tqgm::synthetic {

struct GbmSpec {
    std::uint64_t seed{2016};
    int first_year{2016};
    int last_year{2020};
    std::size_t extra_days{30}; // trading days after last_year
    double start_a{750.0};
    double start_b{150.0};
    double drift_a{4e-4};  // daily log drift
    double drift_b{-2e-4};
    double vol_a{0.015};   // daily log volatility
    double vol_b{0.013};
    double correlation{0.5};
    /// Every n-th weekday is skipped in asset B only, so alignment has
    /// something to drop. 0 disables.
    std::size_t b_gap_every{97};
};

/// Two correlated price series named "A" and "B".
std::pair<PriceSeries, PriceSeries> correlated_gbm(const GbmSpec &spec);

/// A chain drawn from a column-stochastic matrix (T(i, j) = P(j -> i)).
std::vector<int> markov_chain(const Eigen::MatrixXd &transition,
                              std::size_t length, int initial,
                              std::uint64_t seed);

/// y_t = c + sum A_i y_{t-i} + e_t with e_t ~ N(0, noise_sd^2 I); returns
/// length x d after discarding `burn_in` steps.
Eigen::MatrixXd simulate_var(const std::vector<Eigen::MatrixXd> &coefficients,
                             const Eigen::VectorXd &intercept,
                             double noise_sd, std::size_t length,
                             std::uint64_t seed, std::size_t burn_in = 200);

} // namespace tqgm::synthetic
