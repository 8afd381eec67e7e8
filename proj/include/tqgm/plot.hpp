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
 * Plot data: per-figure CSV series and static SVG line charts built from a
 * report document.
 */
#pragma once

#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

namespace tqgm::plot {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    double width{720};
    double height{420};
    /// Horizontal reference line (e.g. the entropy maximum); NaN for none.
    double reference{std::numeric_limits<double>::quiet_NaN()};
};

std::string svg_line_chart(const ChartSpec &spec,
                           const std::vector<Series> &series);

/// Writes loss_curves.csv, cumulative_d1.csv, entropy.csv and one SVG per
/// figure into `out_dir`. Returns the written paths in a fixed order.
std::vector<std::filesystem::path>
write_plot_data(const nlohmann::json &report,
                const std::filesystem::path &out_dir);

} // namespace tqgm::plot
