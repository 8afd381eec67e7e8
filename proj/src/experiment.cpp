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

#include "tqgm/experiment.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "tqgm/baselines.hpp"
#include "tqgm/errors.hpp"

namespace tqgm {
namespace {

AssetScores score(const std::string &id, std::vector<int> predicted_levels,
                  std::vector<int> true_levels,
                  std::vector<double> predicted_values,
                  std::vector<double> predicted_prices,
                  std::vector<double> actual_prices, int n_levels) {
    AssetScores s;
    s.asset_id = id;
    s.mse = mse_price(predicted_prices, actual_prices);
    s.d1_mean = manhattan_d1(predicted_levels, true_levels, D1Variant::Mean,
                             n_levels);
    s.d1_sum = manhattan_d1(predicted_levels, true_levels, D1Variant::Sum,
                            n_levels);
    if (predicted_levels.size() >= 2) {
        s.fit = cumulative_fit(true_levels, predicted_levels);
    }
    s.predicted_levels = std::move(predicted_levels);
    s.true_levels = std::move(true_levels);
    s.predicted_values = std::move(predicted_values);
    s.predicted_prices = std::move(predicted_prices);
    s.actual_prices = std::move(actual_prices);
    return s;
}

std::vector<double> prices_from_values(const DatasetSplit &split,
                                       std::size_t asset,
                                       const std::vector<double> &values) {
    if (split.train.domain == SourceDomain::RawPrices) {
        return values;
    }
    std::vector<double> prices;
    double p = split.last_train_price.at(asset);
    for (auto r : values) {
        p *= std::exp(r);
        prices.push_back(p);
    }
    return prices;
}

} // namespace

std::size_t ModelResult::n_failed() const {
    std::size_t n = 0;
    for (const auto &s : seeds) {
        n += s.ok ? 0 : 1;
    }
    return n;
}

bool EvalReport::partial_failure() const {
    for (const auto &m : models) {
        if (m.n_failed() > 0) {
            return true;
        }
    }
    return false;
}

std::vector<std::uint64_t> derive_seeds(std::size_t n_runs,
                                        std::uint64_t offset) {
    std::vector<std::uint64_t> seeds(n_runs);
    for (std::size_t i = 0; i < n_runs; ++i) {
        seeds[i] = offset + i;
    }
    return seeds;
}

RegisterLayout layout_for(const DatasetSplit &split, std::size_t n_ancilla) {
    const std::size_t m = split.train.m;
    if (!std::has_single_bit(m)) {
        throw std::invalid_argument("level count must be a power of two");
    }
    RegisterLayout layout;
    layout.n_assets = split.train.n_assets();
    layout.bits_per_asset = static_cast<std::size_t>(std::countr_zero(m));
    layout.n_ancilla = n_ancilla;
    layout.validate();
    return layout;
}

SeedResult evaluate_model(const DatasetSplit &split, const TrainedModel &model,
                          std::size_t entropy_steps) {
    const auto &layout = model.layout;
    const std::size_t horizon = split.horizon();
    if (horizon == 0) {
        throw std::invalid_argument("split has an empty holdout");
    }
    const auto initial = split.initial_levels();
    const auto steps = forecast_steps(layout, model.params, initial, horizon,
                                      split.train.representatives);

    SeedResult r;
    r.seed = model.seed;
    r.loss_history = model.loss_history;
    for (std::size_t a = 0; a < layout.n_assets; ++a) {
        std::vector<int> levels;
        std::vector<double> values;
        for (const auto &s : steps) {
            levels.push_back(s.levels[a]);
            values.push_back(s.expected[a]);
        }
        auto prices = prices_from_values(split, a, values);
        r.assets.push_back(score(split.asset_ids.at(a), std::move(levels),
                                 split.holdout_levels.at(a), std::move(values),
                                 std::move(prices), split.holdout_prices.at(a),
                                 static_cast<int>(split.train.m)));
    }
    if (entropy_steps > 0) {
        r.entropy = entropy_trace(layout, model.params, initial, entropy_steps);
    }
    return r;
}

std::vector<AssetAggregate> aggregate(const std::vector<SeedResult> &seeds,
                                      const std::vector<std::string> &ids) {
    std::vector<AssetAggregate> out;
    for (std::size_t a = 0; a < ids.size(); ++a) {
        std::vector<double> mse, d1m, d1s, slope, r2;
        for (const auto &s : seeds) {
            if (!s.ok) {
                continue;
            }
            const auto &x = s.assets.at(a);
            mse.push_back(x.mse);
            d1m.push_back(x.d1_mean);
            d1s.push_back(x.d1_sum);
            slope.push_back(x.fit.slope);
            r2.push_back(x.fit.r_squared);
        }
        out.push_back({ids[a], summarize(mse), summarize(d1m), summarize(d1s),
                       summarize(slope), summarize(r2)});
    }
    return out;
}

std::vector<BaselineResult> run_baselines(const DatasetSplit &split,
                                          std::size_t max_lags) {
    if (split.task != Task::Forecast) {
        throw std::invalid_argument("baselines apply to forecast splits");
    }
    const std::size_t horizon = split.horizon();
    const std::size_t d = split.asset_ids.size();
    const auto T = static_cast<Eigen::Index>(split.train_values.at(0).size());
    Eigen::MatrixXd y(T, static_cast<Eigen::Index>(d));
    for (std::size_t a = 0; a < d; ++a) {
        for (Eigen::Index t = 0; t < T; ++t) {
            y(t, static_cast<Eigen::Index>(a)) =
                split.train_values[a][static_cast<std::size_t>(t)];
        }
    }
    const int m = static_cast<int>(split.train.m);

    BaselineResult var;
    var.method = "var";
    const auto model = fit_var(y, max_lags);
    var.lag_order = model.p;
    const auto fc = forecast_var(model, y, horizon);
    for (std::size_t a = 0; a < d; ++a) {
        std::vector<double> values;
        std::vector<int> levels;
        for (std::size_t s = 0; s < horizon; ++s) {
            const double r =
                fc(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(a));
            values.push_back(r);
            levels.push_back(assign_level(r, split.train.edges[a]));
        }
        auto prices = prices_from_values(split, a, values);
        var.assets.push_back(score(split.asset_ids[a], std::move(levels),
                                   split.holdout_levels[a], std::move(values),
                                   std::move(prices), split.holdout_prices[a],
                                   m));
    }

    BaselineResult naive;
    naive.method = "naive";
    for (std::size_t a = 0; a < d; ++a) {
        const std::vector<double> history{split.last_train_price[a]};
        auto prices = naive_forecast(history, horizon);
        const int level = assign_level(0.0, split.train.edges[a]);
        naive.assets.push_back(score(split.asset_ids[a],
                                     std::vector<int>(horizon, level),
                                     split.holdout_levels[a],
                                     std::vector<double>(horizon, 0.0),
                                     std::move(prices),
                                     split.holdout_prices[a], m));
    }
    return {std::move(var), std::move(naive)};
}

ModelResult train_and_evaluate(const DatasetSplit &split,
                               const RegisterLayout &layout,
                               const TrainingConfig &config,
                               const std::vector<std::uint64_t> &seeds,
                               std::size_t entropy_steps) {
    ModelResult result;
    result.n_layers = config.n_layers;
    for (auto seed : seeds) {
        TrainingConfig c = config;
        c.seed = seed;
        try {
            const auto model = train(split.train, layout, c, split.mask);
            result.seeds.push_back(evaluate_model(split, model, entropy_steps));
        } catch (const TrainingFailure &e) {
            SeedResult failed;
            failed.seed = seed;
            failed.ok = false;
            failed.error = e.what();
            result.seeds.push_back(std::move(failed));
        }
    }
    result.aggregate = aggregate(result.seeds, split.asset_ids);
    return result;
}

EvalReport make_report(const DatasetSplit &split, const RegisterLayout &layout,
                       const TrainingConfig &config) {
    EvalReport report;
    report.dataset = split.name;
    report.task = split.task;
    report.asset_ids = split.asset_ids;
    for (const auto &d : split.holdout_dates) {
        report.holdout_dates.push_back(format_iso_date(d));
    }
    report.mask = split.mask;
    report.layout = layout;
    report.config = config;
    return report;
}

EvalReport run_forecast_experiment(const DatasetSplit &split,
                                   const TrainingConfig &config,
                                   const RegisterLayout &layout,
                                   std::size_t max_lags) {
    if (split.task != Task::Forecast) {
        throw std::invalid_argument("not a forecast split");
    }
    config.validate();
    auto report = make_report(split, layout, config);
    report.models.push_back(train_and_evaluate(
        split, layout, config, derive_seeds(config.n_runs, config.seed)));
    report.baselines = run_baselines(split, max_lags);
    return report;
}

EvalReport run_imputation_experiment(const DatasetSplit &split,
                                     const TrainingConfig &config,
                                     const std::vector<std::size_t> &layers,
                                     const RegisterLayout &layout) {
    if (split.task != Task::Impute || !split.mask || split.mask->empty()) {
        throw std::invalid_argument(
            "imputation experiment requires a masked imputation split");
    }
    if (layers.empty()) {
        throw std::invalid_argument("no layer settings given");
    }
    config.validate();
    auto report = make_report(split, layout, config);
    const auto seeds = derive_seeds(config.n_runs, config.seed);
    for (auto l : layers) {
        TrainingConfig c = config;
        c.n_layers = l;
        report.models.push_back(train_and_evaluate(split, layout, c, seeds));
    }
    return report;
}

} // namespace tqgm
