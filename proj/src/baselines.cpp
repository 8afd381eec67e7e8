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

#include "tqgm/baselines.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tqgm/errors.hpp"

namespace tqgm {
namespace {

// Row r of the design matrix: [1, y_{t-1}, ..., y_{t-p}] for t = first + r.
Eigen::MatrixXd design(const Eigen::MatrixXd &y, std::size_t p,
                       std::size_t first) {
    const auto T = static_cast<std::size_t>(y.rows());
    const auto d = static_cast<Eigen::Index>(y.cols());
    const auto n = static_cast<Eigen::Index>(T - first);
    Eigen::MatrixXd x(n, 1 + d * static_cast<Eigen::Index>(p));
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto t = static_cast<Eigen::Index>(first) + r;
        x(r, 0) = 1.0;
        for (std::size_t lag = 1; lag <= p; ++lag) {
            x.block(r, 1 + d * static_cast<Eigen::Index>(lag - 1), 1, d) =
                y.row(t - static_cast<Eigen::Index>(lag));
        }
    }
    return x;
}

} // namespace

Eigen::VectorXd VarModel::unconditional_mean() const {
    const auto d = intercept.size();
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(d, d);
    for (const auto &c : coefficients) {
        a -= c;
    }
    return a.fullPivLu().solve(intercept);
}

VarModel fit_var_order(const Eigen::MatrixXd &series, std::size_t p,
                       std::size_t first_row) {
    if (p == 0) {
        throw std::invalid_argument("VAR order must be >= 1");
    }
    const auto T = static_cast<std::size_t>(series.rows());
    const auto d = series.cols();
    if (first_row < p || first_row >= T) {
        throw std::invalid_argument("VAR sample start out of range");
    }
    const auto x = design(series, p, first_row);
    const Eigen::MatrixXd y =
        series.bottomRows(static_cast<Eigen::Index>(T - first_row));
    if (x.rows() < x.cols()) {
        throw RankDeficiency("fewer observations than regressors", p);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    if (qr.rank() < x.cols()) {
        throw RankDeficiency("singular VAR regressor matrix", p);
    }
    const Eigen::MatrixXd b = qr.solve(y); // (1 + d p) x d

    VarModel m;
    m.p = p;
    m.first_row = first_row;
    m.intercept = b.row(0).transpose();
    for (std::size_t lag = 0; lag < p; ++lag) {
        m.coefficients.push_back(
            b.block(1 + d * static_cast<Eigen::Index>(lag), 0, d, d)
                .transpose());
    }
    m.residuals = y - x * b;
    m.residual_covariance = (m.residuals.transpose() * m.residuals) /
                            static_cast<double>(x.rows());
    const double det = m.residual_covariance.determinant();
    const double n = static_cast<double>(x.rows());
    const double dd = static_cast<double>(d);
    m.aic = det > 0.0 ? n * std::log(det) +
                            2.0 * (dd * dd * static_cast<double>(p) + dd)
                      : -std::numeric_limits<double>::infinity();
    return m;
}

VarModel fit_var(const Eigen::MatrixXd &series, std::size_t max_p) {
    if (max_p == 0) {
        throw std::invalid_argument("max lag must be >= 1");
    }
    const auto T = static_cast<std::size_t>(series.rows());
    const auto d = static_cast<std::size_t>(series.cols());
    if (d == 0 || T <= max_p + d * max_p + 1) {
        throw std::invalid_argument(
            "series of length " + std::to_string(T) +
            " too short for VAR with max lag " + std::to_string(max_p));
    }
    std::vector<double> scores;
    std::size_t best = 1;
    double best_aic = std::numeric_limits<double>::infinity();
    std::size_t fitted = 0;
    for (std::size_t p = 1; p <= max_p; ++p) {
        double aic = std::numeric_limits<double>::infinity();
        try {
            aic = fit_var_order(series, p, max_p).aic;
            ++fitted;
        } catch (const RankDeficiency &) {
            // order skipped; exactly collinear lags (e.g. periodic data)
        }
        scores.push_back(aic);
        if (aic < best_aic) {
            best_aic = aic;
            best = p;
        }
    }
    if (fitted == 0) {
        throw RankDeficiency("no lag order up to max_p could be fitted",
                             max_p);
    }
    auto model = fit_var_order(series, best, best);
    model.aic_by_order = std::move(scores);
    return model;
}

Eigen::MatrixXd forecast_var(const VarModel &model,
                             const Eigen::MatrixXd &history,
                             std::size_t steps) {
    const auto d = static_cast<Eigen::Index>(model.dimension());
    if (history.cols() != d) {
        throw std::invalid_argument("history dimension mismatch");
    }
    if (static_cast<std::size_t>(history.rows()) < model.p) {
        throw std::invalid_argument("history shorter than the VAR order");
    }
    // Rolling window of the last p observations, newest last.
    std::vector<Eigen::VectorXd> window;
    for (auto r = history.rows() - static_cast<Eigen::Index>(model.p);
         r < history.rows(); ++r) {
        window.push_back(history.row(r).transpose());
    }
    Eigen::MatrixXd out(static_cast<Eigen::Index>(steps), d);
    for (std::size_t s = 0; s < steps; ++s) {
        Eigen::VectorXd next = model.intercept;
        for (std::size_t lag = 1; lag <= model.p; ++lag) {
            next += model.coefficients[lag - 1] * window[window.size() - lag];
        }
        out.row(static_cast<Eigen::Index>(s)) = next.transpose();
        window.erase(window.begin());
        window.push_back(next);
    }
    return out;
}

std::vector<double> naive_forecast(std::span<const double> prices,
                                   std::size_t steps) {
    if (prices.empty()) {
        throw std::invalid_argument("naive forecast needs a history");
    }
    return std::vector<double>(steps, prices.back());
}

} // namespace tqgm
