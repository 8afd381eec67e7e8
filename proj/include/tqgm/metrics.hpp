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

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tqgm {

double mse_price(std::span<const double> predicted,
                 std::span<const double> actual);

enum class D1Variant { Mean, Sum };

/// Manhattan distance between two level sequences. Mean divides by the
/// length; Sum does not.
double manhattan_d1(std::span<const int> x, std::span<const int> y,
                    D1Variant variant, int n_levels = 4);

struct CumulativeFit {
    double slope{0.0};
    double intercept{0.0};
    double r_squared{0.0};
    std::vector<double> curve; // C_j = sum_{i <= j} |x_i - y_i|
};

/// OLS line C_j ~ slope * j + intercept over j = 1..n.
CumulativeFit cumulative_fit(std::span<const int> x, std::span<const int> y);

struct Summary {
    double mean{0.0};
    double std{0.0}; // population (ddof = 0)
};

Summary summarize(std::span<const double> values);

} // namespace tqgm
