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
 * Price ingestion, alignment, log returns, quantile discretization and the
 * yearly forecast/imputation splits.
 */
#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tqgm {

using Date = std::chrono::year_month_day;

/// Parses yyyy-mm-dd; returns nullopt on anything else.
std::optional<Date> parse_iso_date(std::string_view text);
std::string format_iso_date(const Date &d);

struct PriceObservation {
    Date date;
    double close;
};

struct PriceSeries {
    std::string asset_id;
    std::vector<PriceObservation> observations;

    [[nodiscard]] std::size_t size() const noexcept {
        return observations.size();
    }
    [[nodiscard]] std::vector<double> closes() const;
    [[nodiscard]] std::vector<Date> dates() const;
};

/// Reads a CSV with a header naming `Date` and `Close` columns (other
/// columns ignored). Rows are returned sorted by date. A missing or
/// non-positive Close is rejected with the offending line number.
PriceSeries load_csv(const std::filesystem::path &path,
                     std::string asset_id = {});
PriceSeries parse_csv(std::istream &in, std::string asset_id,
                      const std::string &source_name = "<stream>");

/// Several assets restricted to their common trading dates.
struct PricePanel {
    std::vector<Date> dates;
    std::vector<std::string> asset_ids;
    std::vector<std::vector<double>> closes; // [asset][t]

    [[nodiscard]] std::size_t length() const noexcept { return dates.size(); }
    [[nodiscard]] std::size_t n_assets() const noexcept {
        return asset_ids.size();
    }
    [[nodiscard]] PriceSeries asset(std::size_t a) const;
};

PricePanel align(const PriceSeries &a, const PriceSeries &b);
PricePanel align(std::span<const PriceSeries> series);

/// Dataset file: CSV with header `Date,<asset>,<asset>...`.
void write_dataset(const PricePanel &panel, const std::filesystem::path &path);
PricePanel read_dataset(const std::filesystem::path &path);

struct LogReturnSeries {
    std::string asset_id;
    std::vector<Date> dates; // date of x_t for each r_t
    std::vector<double> values;
};

LogReturnSeries log_diff(const PriceSeries &series);
std::vector<double> log_diff(std::span<const double> prices);

enum class SourceDomain { LogReturns, RawPrices };

std::string to_string(SourceDomain d);
SourceDomain source_domain_from_string(std::string_view s);

/// Quantile bins of one continuous series.
struct Discretization {
    std::vector<int> levels;
    std::vector<double> edges;           // m - 1, ascending
    std::vector<double> representatives; // m, bin means
};

/// Bin index of a value: number of edges strictly below it.
int assign_level(double value, std::span<const double> edges);

/// Linear-interpolation empirical percentile, q in [0, 1].
double percentile(std::span<const double> sorted_values, double q);

/// Equal-mass bins with edges at the j/m percentiles and each bin
/// represented by the mean of its members. Throws DegenerateBins when every
/// value is identical.
Discretization discretize(std::span<const double> values, std::size_t m);

/// Maps levels to representatives. For log returns the path is
/// reconstructed multiplicatively from `last_price`.
std::vector<double> undiscretize(std::span<const int> levels,
                                 std::span<const double> representatives,
                                 double last_price, SourceDomain domain);

/// Level value of an unobserved step.
inline constexpr int kMissingLevel = -1;

/// Per-asset discrete levels on a common time axis. Unobserved steps hold
/// kMissingLevel.
struct DiscreteSeries {
    std::size_t m{4};
    SourceDomain domain{SourceDomain::LogReturns};
    std::vector<std::vector<int>> levels; // [asset][t]
    std::vector<std::vector<double>> edges;
    std::vector<std::vector<double>> representatives;

    [[nodiscard]] std::size_t n_assets() const noexcept {
        return levels.size();
    }
    [[nodiscard]] std::size_t length() const noexcept {
        return levels.empty() ? 0 : levels.front().size();
    }
    [[nodiscard]] std::vector<int> levels_at(std::size_t t) const;
    void validate() const;
};

enum class Task { Forecast, Impute };

std::string to_string(Task t);
Task task_from_string(std::string_view s);

/// Half-open index interval [start, start + length) of unobserved steps.
struct TimeMask {
    std::size_t start{0};
    std::size_t length{0};

    [[nodiscard]] bool contains(std::size_t t) const noexcept {
        return t >= start && t < start + length;
    }
    [[nodiscard]] bool empty() const noexcept { return length == 0; }
};

struct DatasetSplit {
    std::string name; // e.g. D2016
    Task task{Task::Forecast};
    std::vector<std::string> asset_ids;

    DiscreteSeries train;
    std::vector<Date> train_dates;
    std::vector<std::vector<double>> train_values; // returns or prices
    // Masked imputation steps hold NaN in train_values / train_prices.
    std::vector<std::vector<double>> train_prices;
    std::vector<double> last_train_price;

    std::optional<TimeMask> mask; // imputation only

    std::vector<Date> holdout_dates;
    std::vector<std::vector<double>> holdout_prices; // [asset][step]
    std::vector<std::vector<int>> holdout_levels;    // [asset][step]

    /// Levels the generator starts from: the last training state for a
    /// forecast, the state just before the mask for imputation.
    [[nodiscard]] std::vector<int> initial_levels() const;
    [[nodiscard]] std::size_t horizon() const noexcept {
        return holdout_levels.empty() ? 0 : holdout_levels.front().size();
    }
};

inline constexpr std::size_t kDefaultHorizon = 10;
inline constexpr std::size_t kDefaultMaskStart = 50;
inline constexpr std::size_t kDefaultMaskLength = 10;

/// Trains on the year's log returns; holds out the next `horizon` prices.
DatasetSplit make_forecast_split(const PricePanel &panel, int year,
                                 std::size_t m = 4,
                                 std::size_t horizon = kDefaultHorizon);

/// Trains on the year's raw prices with steps [mask_start, mask_start +
/// mask_len) unobserved; the masked levels are the holdout.
DatasetSplit make_imputation_split(const PricePanel &panel, int year,
                                   std::size_t mask_start = kDefaultMaskStart,
                                   std::size_t mask_len = kDefaultMaskLength,
                                   std::size_t m = 4);

/// Indices of the panel whose date falls in `year`.
std::vector<std::size_t> year_indices(const PricePanel &panel, int year);

} // namespace tqgm
