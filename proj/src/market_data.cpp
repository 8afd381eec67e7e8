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

#include "tqgm/market_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tqgm/errors.hpp"

namespace tqgm {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                          s.front() == '"')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                          s.back() == '\r' || s.back() == '"')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    const auto *end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        return std::nullopt;
    }
    return v;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

} // namespace

std::optional<Date> parse_iso_date(std::string_view text) {
    text = trim(text);
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        return std::nullopt;
    }
    int y = 0;
    unsigned m = 0;
    unsigned d = 0;
    auto num = [&](std::size_t pos, std::size_t len, auto &out) {
        auto [ptr, ec] =
            std::from_chars(text.data() + pos, text.data() + pos + len, out);
        return ec == std::errc() && ptr == text.data() + pos + len;
    };
    if (!num(0, 4, y) || !num(5, 2, m) || !num(8, 2, d)) {
        return std::nullopt;
    }
    const Date date{std::chrono::year{y}, std::chrono::month{m},
                    std::chrono::day{d}};
    if (!date.ok()) {
        return std::nullopt;
    }
    return date;
}

std::string format_iso_date(const Date &d) {
    std::ostringstream os;
    os << std::setfill('0') << std::setw(4) << static_cast<int>(d.year())
       << '-' << std::setw(2) << static_cast<unsigned>(d.month()) << '-'
       << std::setw(2) << static_cast<unsigned>(d.day());
    return os.str();
}

std::vector<double> PriceSeries::closes() const {
    std::vector<double> out;
    out.reserve(observations.size());
    for (const auto &o : observations) {
        out.push_back(o.close);
    }
    return out;
}

std::vector<Date> PriceSeries::dates() const {
    std::vector<Date> out;
    out.reserve(observations.size());
    for (const auto &o : observations) {
        out.push_back(o.date);
    }
    return out;
}

PriceSeries parse_csv(std::istream &in, std::string asset_id,
                      const std::string &source_name) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw SchemaError(source_name + ": empty file");
    }
    ++line_no;
    const auto header = split_commas(line);
    std::optional<std::size_t> date_col;
    std::optional<std::size_t> close_col;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const auto name = lower(header[i]);
        if (name == "date") {
            date_col = i;
        } else if (name == "close") {
            close_col = i;
        }
    }
    if (!date_col) {
        throw SchemaError(source_name + ": no Date column");
    }
    if (!close_col) {
        throw SchemaError(source_name + ": no Close column");
    }

    PriceSeries series{std::move(asset_id), {}};
    std::set<std::chrono::sys_days> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split_commas(line);
        const std::size_t need = std::max(*date_col, *close_col) + 1;
        if (fields.size() < need) {
            throw ParseError(source_name, line_no, "too few columns");
        }
        const auto date = parse_iso_date(fields[*date_col]);
        if (!date) {
            throw ParseError(source_name, line_no,
                             "bad date '" + std::string(fields[*date_col]) +
                                 "'");
        }
        const auto close = parse_double(fields[*close_col]);
        if (!close || !std::isfinite(*close)) {
            throw ParseError(source_name, line_no,
                             "missing or non-numeric Close '" +
                                 std::string(fields[*close_col]) + "'");
        }
        if (*close <= 0.0) {
            throw ParseError(source_name, line_no, "non-positive Close");
        }
        if (!seen.insert(std::chrono::sys_days{*date}).second) {
            throw ParseError(source_name, line_no,
                             "duplicate date " + format_iso_date(*date));
        }
        series.observations.push_back({*date, *close});
    }
    std::stable_sort(series.observations.begin(), series.observations.end(),
                     [](const auto &a, const auto &b) {
                         return std::chrono::sys_days{a.date} <
                                std::chrono::sys_days{b.date};
                     });
    return series;
}

PriceSeries load_csv(const std::filesystem::path &path, std::string asset_id) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    if (asset_id.empty()) {
        asset_id = path.stem().string();
    }
    return parse_csv(in, std::move(asset_id), path.string());
}

PriceSeries PricePanel::asset(std::size_t a) const {
    PriceSeries s{asset_ids.at(a), {}};
    s.observations.reserve(dates.size());
    for (std::size_t t = 0; t < dates.size(); ++t) {
        s.observations.push_back({dates[t], closes[a][t]});
    }
    return s;
}

PricePanel align(std::span<const PriceSeries> series) {
    if (series.empty()) {
        throw std::invalid_argument("align: no series");
    }
    std::map<std::chrono::sys_days, std::size_t> counts;
    for (const auto &s : series) {
        for (const auto &o : s.observations) {
            ++counts[std::chrono::sys_days{o.date}];
        }
    }
    PricePanel panel;
    for (const auto &[day, n] : counts) {
        if (n == series.size()) {
            panel.dates.emplace_back(day);
        }
    }
    if (panel.dates.empty()) {
        throw std::invalid_argument("align: series share no dates");
    }
    for (const auto &s : series) {
        panel.asset_ids.push_back(s.asset_id);
        std::vector<double> closes;
        closes.reserve(panel.dates.size());
        std::size_t j = 0;
        for (const auto &d : panel.dates) {
            const std::chrono::sys_days day{d};
            while (std::chrono::sys_days{s.observations[j].date} < day) {
                ++j;
            }
            closes.push_back(s.observations[j].close);
        }
        panel.closes.push_back(std::move(closes));
    }
    return panel;
}

PricePanel align(const PriceSeries &a, const PriceSeries &b) {
    const std::vector<PriceSeries> both{a, b};
    return align(both);
}

void write_dataset(const PricePanel &panel, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << "Date";
    for (const auto &id : panel.asset_ids) {
        out << ',' << id;
    }
    out << '\n' << std::setprecision(17);
    for (std::size_t t = 0; t < panel.length(); ++t) {
        out << format_iso_date(panel.dates[t]);
        for (const auto &c : panel.closes) {
            out << ',' << c[t];
        }
        out << '\n';
    }
}

PricePanel read_dataset(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw SchemaError(path.string() + ": empty dataset");
    }
    const auto header = split_commas(line);
    if (header.size() < 2 || lower(header[0]) != "date") {
        throw SchemaError(path.string() +
                          ": dataset header must be Date,<asset>...");
    }
    std::vector<PriceSeries> series;
    for (std::size_t i = 1; i < header.size(); ++i) {
        series.push_back({std::string(header[i]), {}});
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split_commas(line);
        if (fields.size() != header.size()) {
            throw ParseError(path.string(), line_no, "column count mismatch");
        }
        const auto date = parse_iso_date(fields[0]);
        if (!date) {
            throw ParseError(path.string(), line_no, "bad date");
        }
        for (std::size_t i = 1; i < fields.size(); ++i) {
            const auto v = parse_double(fields[i]);
            if (!v || *v <= 0.0) {
                throw ParseError(path.string(), line_no, "bad price");
            }
            series[i - 1].observations.push_back({*date, *v});
        }
    }
    return align(series);
}

std::vector<double> log_diff(std::span<const double> prices) {
    if (prices.size() < 2) {
        throw std::invalid_argument("log_diff: need at least 2 prices");
    }
    std::vector<double> r(prices.size() - 1);
    for (std::size_t t = 1; t < prices.size(); ++t) {
        r[t - 1] = std::log(prices[t]) - std::log(prices[t - 1]);
    }
    return r;
}

LogReturnSeries log_diff(const PriceSeries &series) {
    const auto closes = series.closes();
    LogReturnSeries out{series.asset_id, {}, log_diff(closes)};
    for (std::size_t t = 1; t < series.size(); ++t) {
        out.dates.push_back(series.observations[t].date);
    }
    return out;
}

std::string to_string(SourceDomain d) {
    return d == SourceDomain::LogReturns ? "log_returns" : "raw_prices";
}

SourceDomain source_domain_from_string(std::string_view s) {
    if (s == "log_returns") {
        return SourceDomain::LogReturns;
    }
    if (s == "raw_prices") {
        return SourceDomain::RawPrices;
    }
    throw std::invalid_argument("unknown source domain '" + std::string(s) +
                                "'");
}

std::string to_string(Task t) {
    return t == Task::Forecast ? "forecast" : "impute";
}

Task task_from_string(std::string_view s) {
    if (s == "forecast") {
        return Task::Forecast;
    }
    if (s == "impute") {
        return Task::Impute;
    }
    throw std::invalid_argument("unknown task '" + std::string(s) + "'");
}

int assign_level(double value, std::span<const double> edges) {
    // Ties go to the lower bin.
    return static_cast<int>(
        std::lower_bound(edges.begin(), edges.end(), value) - edges.begin());
}

double percentile(std::span<const double> sorted_values, double q) {
    if (sorted_values.empty()) {
        throw std::invalid_argument("percentile of an empty sample");
    }
    const double h = (static_cast<double>(sorted_values.size()) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted_values.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted_values[lo] + frac * (sorted_values[hi] - sorted_values[lo]);
}

Discretization discretize(std::span<const double> values, std::size_t m) {
    if (m < 2) {
        throw std::invalid_argument("discretize: need at least 2 levels");
    }
    if (values.size() < m) {
        throw std::invalid_argument("discretize: fewer values than levels");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == sorted.back()) {
        throw DegenerateBins("discretize: all values identical");
    }

    Discretization d;
    for (std::size_t j = 1; j < m; ++j) {
        d.edges.push_back(
            percentile(sorted, static_cast<double>(j) / static_cast<double>(m)));
    }
    std::vector<double> sums(m, 0.0);
    std::vector<std::size_t> counts(m, 0);
    d.levels.reserve(values.size());
    for (auto v : values) {
        const int level = assign_level(v, d.edges);
        d.levels.push_back(level);
        sums[level] += v;
        ++counts[level];
    }
    d.representatives.resize(m);
    for (std::size_t b = 0; b < m; ++b) {
        if (counts[b] > 0) {
            d.representatives[b] = sums[b] / static_cast<double>(counts[b]);
        } else {
            // Empty bin (heavy ties): use its edge midpoint.
            const double lo = b == 0 ? d.edges.front() : d.edges[b - 1];
            const double hi = b == m - 1 ? d.edges.back() : d.edges[b];
            d.representatives[b] = 0.5 * (lo + hi);
        }
    }
    return d;
}

std::vector<double> undiscretize(std::span<const int> levels,
                                 std::span<const double> representatives,
                                 double last_price, SourceDomain domain) {
    std::vector<double> out;
    out.reserve(levels.size());
    if (domain == SourceDomain::LogReturns && !(last_price > 0.0)) {
        throw std::invalid_argument("undiscretize: last price must be > 0");
    }
    double price = last_price;
    for (auto level : levels) {
        if (level < 0 ||
            static_cast<std::size_t>(level) >= representatives.size()) {
            throw std::invalid_argument("undiscretize: level " +
                                        std::to_string(level) +
                                        " out of range");
        }
        const double rep = representatives[static_cast<std::size_t>(level)];
        if (domain == SourceDomain::LogReturns) {
            price *= std::exp(rep);
            out.push_back(price);
        } else {
            out.push_back(rep);
        }
    }
    return out;
}

std::vector<int> DiscreteSeries::levels_at(std::size_t t) const {
    std::vector<int> out(levels.size());
    for (std::size_t a = 0; a < levels.size(); ++a) {
        out[a] = levels[a].at(t);
    }
    return out;
}

void DiscreteSeries::validate() const {
    if (levels.empty()) {
        throw std::invalid_argument("discrete series has no assets");
    }
    for (std::size_t a = 0; a < levels.size(); ++a) {
        if (levels[a].size() != length()) {
            throw std::invalid_argument("asset series lengths differ");
        }
        for (auto l : levels[a]) {
            if (l == kMissingLevel) {
                continue;
            }
            if (l < 0 || static_cast<std::size_t>(l) >= m) {
                throw std::invalid_argument("level out of range");
            }
        }
        if (a < edges.size() &&
            !std::is_sorted(edges[a].begin(), edges[a].end())) {
            throw std::invalid_argument("bin edges not ascending");
        }
    }
}

std::vector<int> DatasetSplit::initial_levels() const {
    if (mask) {
        if (mask->start == 0) {
            throw std::invalid_argument("mask starts at the first step");
        }
        return train.levels_at(mask->start - 1);
    }
    return train.levels_at(train.length() - 1);
}

std::vector<std::size_t> year_indices(const PricePanel &panel, int year) {
    std::vector<std::size_t> idx;
    for (std::size_t t = 0; t < panel.length(); ++t) {
        if (static_cast<int>(panel.dates[t].year()) == year) {
            idx.push_back(t);
        }
    }
    return idx;
}

DatasetSplit make_forecast_split(const PricePanel &panel, int year,
                                 std::size_t m, std::size_t horizon) {
    const auto idx = year_indices(panel, year);
    if (idx.size() < m + 1) {
        throw std::invalid_argument("year " + std::to_string(year) +
                                    " has too few observations");
    }
    const std::size_t first = idx.front();
    const std::size_t last = idx.back();
    if (last + horizon >= panel.length()) {
        throw std::invalid_argument("insufficient data after year " +
                                    std::to_string(year) + " for a " +
                                    std::to_string(horizon) +
                                    "-step holdout");
    }

    DatasetSplit split;
    split.name = "D" + std::to_string(year);
    split.task = Task::Forecast;
    split.asset_ids = panel.asset_ids;
    split.train.m = m;
    split.train.domain = SourceDomain::LogReturns;
    for (std::size_t t = first + 1; t <= last; ++t) {
        split.train_dates.push_back(panel.dates[t]);
    }
    for (std::size_t t = last + 1; t <= last + horizon; ++t) {
        split.holdout_dates.push_back(panel.dates[t]);
    }
    for (std::size_t a = 0; a < panel.n_assets(); ++a) {
        const auto &c = panel.closes[a];
        std::vector<double> prices(c.begin() + static_cast<long>(first),
                                   c.begin() + static_cast<long>(last) + 1);
        auto returns = log_diff(prices);
        auto disc = discretize(returns, m);

        std::vector<double> holdout(c.begin() + static_cast<long>(last) + 1,
                                    c.begin() + static_cast<long>(last) + 1 +
                                        static_cast<long>(horizon));
        std::vector<int> holdout_levels;
        double prev = c[last];
        for (auto p : holdout) {
            holdout_levels.push_back(
                assign_level(std::log(p) - std::log(prev), disc.edges));
            prev = p;
        }

        split.train.levels.push_back(std::move(disc.levels));
        split.train.edges.push_back(std::move(disc.edges));
        split.train.representatives.push_back(
            std::move(disc.representatives));
        split.train_values.push_back(std::move(returns));
        split.last_train_price.push_back(c[last]);
        split.train_prices.push_back(std::move(prices));
        split.holdout_prices.push_back(std::move(holdout));
        split.holdout_levels.push_back(std::move(holdout_levels));
    }
    return split;
}

DatasetSplit make_imputation_split(const PricePanel &panel, int year,
                                   std::size_t mask_start,
                                   std::size_t mask_len, std::size_t m) {
    const auto idx = year_indices(panel, year);
    if (idx.empty()) {
        throw std::invalid_argument("year " + std::to_string(year) +
                                    " not present");
    }
    if (mask_start == 0 || mask_len == 0) {
        throw std::invalid_argument("imputation mask must start after step 0 "
                                    "and be non-empty");
    }
    if (idx.size() <= mask_start + mask_len) {
        throw std::invalid_argument(
            "year " + std::to_string(year) + " has " +
            std::to_string(idx.size()) + " steps; mask [" +
            std::to_string(mask_start) + ", " +
            std::to_string(mask_start + mask_len) +
            ") must end before the series does");
    }
    const TimeMask mask{mask_start, mask_len};

    DatasetSplit split;
    split.name = "D" + std::to_string(year);
    split.task = Task::Impute;
    split.asset_ids = panel.asset_ids;
    split.mask = mask;
    split.train.m = m;
    split.train.domain = SourceDomain::RawPrices;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        split.train_dates.push_back(panel.dates[idx[i]]);
        if (mask.contains(i)) {
            split.holdout_dates.push_back(panel.dates[idx[i]]);
        }
    }

    for (std::size_t a = 0; a < panel.n_assets(); ++a) {
        std::vector<double> prices;
        prices.reserve(idx.size());
        for (auto t : idx) {
            prices.push_back(panel.closes[a][t]);
        }
        // Bins are estimated from observed steps only.
        std::vector<double> observed;
        std::vector<double> holdout;
        for (std::size_t i = 0; i < prices.size(); ++i) {
            (mask.contains(i) ? holdout : observed).push_back(prices[i]);
        }
        auto disc = discretize(observed, m);
        std::vector<int> levels;
        levels.reserve(prices.size());
        for (auto p : prices) {
            levels.push_back(assign_level(p, disc.edges));
        }
        std::vector<int> holdout_levels(
            levels.begin() + static_cast<long>(mask_start),
            levels.begin() + static_cast<long>(mask_start + mask_len));
        for (std::size_t i = mask_start; i < mask_start + mask_len; ++i) {
            levels[i] = kMissingLevel;
            prices[i] = std::numeric_limits<double>::quiet_NaN();
        }

        split.train.levels.push_back(std::move(levels));
        split.train.edges.push_back(std::move(disc.edges));
        split.train.representatives.push_back(
            std::move(disc.representatives));
        split.last_train_price.push_back(prices[mask_start - 1]);
        split.train_values.push_back(prices);
        split.train_prices.push_back(std::move(prices));
        split.holdout_prices.push_back(std::move(holdout));
        split.holdout_levels.push_back(std::move(holdout_levels));
    }
    return split;
}

} // namespace tqgm
