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
 * Classical comparison forecasters: VAR(p) with AIC order selection and the
 * random-walk (last value) forecaster.
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace tqgm {

struct VarModel {
    std::size_t p{1};
    std::vector<Eigen::MatrixXd> coefficients; // A_1..A_p, each d x d
    Eigen::VectorXd intercept;
    Eigen::MatrixXd residual_covariance; // ML estimate (divides by n)
    Eigen::MatrixXd residuals;           // n x d, rows first_row..T-1
    std::size_t first_row{0};
    double aic{0.0};
    /// AIC of every candidate order on the common sample, index p - 1.
    std::vector<double> aic_by_order;

    [[nodiscard]] std::size_t dimension() const noexcept {
        return static_cast<std::size_t>(intercept.size());
    }
    /// (I - sum A_i)^{-1} c
    [[nodiscard]] Eigen::VectorXd unconditional_mean() const;
};

/// OLS fit at a fixed order using rows [first_row, T) as regressands.
VarModel fit_var_order(const Eigen::MatrixXd &series, std::size_t p,
                       std::size_t first_row);

/// Scores p = 1..max_p on the common sample (rows max_p..T-1) by
/// n ln det(Sigma) + 2 (d^2 p + d), then refits the winner on rows p..T-1.
/// `series` is T x d.
VarModel fit_var(const Eigen::MatrixXd &series, std::size_t max_p = 50);

/// Iterated one-step forecasts; returns steps x d.
Eigen::MatrixXd forecast_var(const VarModel &model,
                             const Eigen::MatrixXd &history,
                             std::size_t steps = 10);

std::vector<double> naive_forecast(std::span<const double> prices,
                                   std::size_t steps);

} // namespace tqgm
