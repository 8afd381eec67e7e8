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

#include "tqgm/metrics.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace tqgm {

double mse_price(std::span<const double> predicted,
                 std::span<const double> actual) {
    if (predicted.size() != actual.size()) {
        throw std::invalid_argument("mse_price: length mismatch");
    }
    if (predicted.empty()) {
        throw std::invalid_argument("mse_price: empty input");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const double e = predicted[i] - actual[i];
        acc += e * e;
    }
    return acc / static_cast<double>(predicted.size());
}

double manhattan_d1(std::span<const int> x, std::span<const int> y,
                    D1Variant variant, int n_levels) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("manhattan_d1: length mismatch");
    }
    long total = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 0 || x[i] >= n_levels || y[i] < 0 || y[i] >= n_levels) {
            throw std::invalid_argument("manhattan_d1: level out of range");
        }
        total += std::abs(x[i] - y[i]);
    }
    if (variant == D1Variant::Sum) {
        return static_cast<double>(total);
    }
    if (x.empty()) {
        throw std::invalid_argument("manhattan_d1: empty input");
    }
    return static_cast<double>(total) / static_cast<double>(x.size());
}

CumulativeFit cumulative_fit(std::span<const int> x, std::span<const int> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("cumulative_fit: length mismatch");
    }
    const std::size_t n = x.size();
    if (n < 2) {
        throw std::invalid_argument("cumulative_fit: need at least 2 steps");
    }
    CumulativeFit fit;
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        c += std::abs(x[i] - y[i]);
        fit.curve.push_back(c);
    }
    const double nn = static_cast<double>(n);
    const double j_mean = (nn + 1.0) / 2.0;
    double c_mean = 0.0;
    for (auto v : fit.curve) {
        c_mean += v;
    }
    c_mean /= nn;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dj = static_cast<double>(i + 1) - j_mean;
        const double dc = fit.curve[i] - c_mean;
        sxy += dj * dc;
        sxx += dj * dj;
        syy += dc * dc;
    }
    fit.slope = sxy / sxx;
    fit.intercept = c_mean - fit.slope * j_mean;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = fit.curve[i] -
                         (fit.slope * static_cast<double>(i + 1) +
                          fit.intercept);
        ss_res += r * r;
    }
    if (syy == 0.0) {
        if (ss_res != 0.0) {
            throw std::invalid_argument(
                "cumulative_fit: R^2 undefined for a flat curve");
        }
        fit.r_squared = 1.0;
    } else {
        fit.r_squared = 1.0 - ss_res / syy;
    }
    return fit;
}

Summary summarize(std::span<const double> values) {
    if (values.empty()) {
        return {std::nan(""), std::nan("")};
    }
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (auto v : values) {
        mean += v;
    }
    mean /= n;
    double var = 0.0;
    for (auto v : values) {
        var += (v - mean) * (v - mean);
    }
    return {mean, std::sqrt(var / n)};
}

} // namespace tqgm
