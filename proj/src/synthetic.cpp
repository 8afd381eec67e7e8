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

#include "tqgm/synthetic.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "tqgm/random.hpp"

namespace tqgm::synthetic {
namespace {

double to_cents(double price) { return std::round(price * 100.0) / 100.0; }

} // namespace

std::pair<PriceSeries, PriceSeries> correlated_gbm(const GbmSpec &spec) {
    using namespace std::chrono;
    if (spec.last_year < spec.first_year) {
        throw std::invalid_argument("bad year range");
    }
    if (std::abs(spec.correlation) > 1.0) {
        throw std::invalid_argument("correlation must lie in [-1, 1]");
    }
    Rng rng(spec.seed);
    PriceSeries a{"A", {}};
    PriceSeries b{"B", {}};
    double log_a = std::log(spec.start_a);
    double log_b = std::log(spec.start_b);
    const double ortho = std::sqrt(1.0 - spec.correlation * spec.correlation);

    sys_days day{year{spec.first_year} / January / 1};
    std::size_t weekday_count = 0;
    std::size_t after = 0;
    while (true) {
        const year_month_day ymd{day};
        if (static_cast<int>(ymd.year()) > spec.last_year) {
            if (after == spec.extra_days) {
                break;
            }
        }
        const weekday wd{day};
        if (wd != Saturday && wd != Sunday) {
            const bool first = a.observations.empty();
            if (!first) {
                const double z1 = rng.normal();
                const double z2 = spec.correlation * z1 + ortho * rng.normal();
                log_a += spec.drift_a - 0.5 * spec.vol_a * spec.vol_a +
                         spec.vol_a * z1;
                log_b += spec.drift_b - 0.5 * spec.vol_b * spec.vol_b +
                         spec.vol_b * z2;
            }
            ++weekday_count;
            a.observations.push_back({ymd, to_cents(std::exp(log_a))});
            if (spec.b_gap_every == 0 || first ||
                weekday_count % spec.b_gap_every != 0) {
                b.observations.push_back({ymd, to_cents(std::exp(log_b))});
            }
            if (static_cast<int>(ymd.year()) > spec.last_year) {
                ++after;
            }
        }
        day += days{1};
    }
    return {std::move(a), std::move(b)};
}

std::vector<int> markov_chain(const Eigen::MatrixXd &transition,
                              std::size_t length, int initial,
                              std::uint64_t seed) {
    const auto m = transition.rows();
    if (transition.cols() != m || m == 0) {
        throw std::invalid_argument("transition matrix must be square");
    }
    if (initial < 0 || initial >= m) {
        throw std::invalid_argument("initial state out of range");
    }
    Rng rng(seed);
    std::vector<int> chain;
    chain.reserve(length);
    int state = initial;
    for (std::size_t t = 0; t < length; ++t) {
        chain.push_back(state);
        const double u = rng.uniform();
        double acc = 0.0;
        int next = static_cast<int>(m) - 1;
        for (Eigen::Index i = 0; i < m; ++i) {
            acc += transition(i, state);
            if (u < acc) {
                next = static_cast<int>(i);
                break;
            }
        }
        state = next;
    }
    return chain;
}

Eigen::MatrixXd simulate_var(const std::vector<Eigen::MatrixXd> &coefficients,
                             const Eigen::VectorXd &intercept,
                             double noise_sd, std::size_t length,
                             std::uint64_t seed, std::size_t burn_in) {
    const auto d = intercept.size();
    const std::size_t p = coefficients.size();
    Rng rng(seed);
    const std::size_t total = length + burn_in + p;
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(total),
                                              d);
    for (std::size_t t = p; t < total; ++t) {
        Eigen::VectorXd next = intercept;
        for (std::size_t i = 1; i <= p; ++i) {
            next += coefficients[i - 1] *
                    y.row(static_cast<Eigen::Index>(t - i)).transpose();
        }
        for (Eigen::Index j = 0; j < d; ++j) {
            next(j) += noise_sd * rng.normal();
        }
        y.row(static_cast<Eigen::Index>(t)) = next.transpose();
    }
    return y.bottomRows(static_cast<Eigen::Index>(length));
}

} // namespace tqgm::synthetic
