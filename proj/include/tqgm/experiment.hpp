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
 * Forecast and imputation experiments: multi-seed training, evaluation
 * against the holdout, classical baselines and aggregate statistics.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tqgm/market_data.hpp"
#include "tqgm/metrics.hpp"
#include "tqgm/model.hpp"
#include "tqgm/prediction.hpp"

namespace tqgm {

/// Scores of one forecaster on one asset over the holdout.
struct AssetScores {
    std::string asset_id;
    std::vector<int> predicted_levels;
    std::vector<int> true_levels;
    std::vector<double> predicted_values; // returns or prices
    std::vector<double> predicted_prices;
    std::vector<double> actual_prices;
    double mse{0.0};
    double d1_mean{0.0};
    double d1_sum{0.0};
    CumulativeFit fit;
};

struct SeedResult {
    std::uint64_t seed{0};
    bool ok{true};
    std::string error;
    std::vector<AssetScores> assets;
    std::vector<LossRecord> loss_history;
    EntropyTrace entropy;
};

struct AssetAggregate {
    std::string asset_id;
    Summary mse;
    Summary d1_mean;
    Summary d1_sum;
    Summary slope;
    Summary r_squared;
};

struct ModelResult {
    std::size_t n_layers{1};
    std::vector<SeedResult> seeds;
    std::vector<AssetAggregate> aggregate; // over successful seeds

    [[nodiscard]] std::size_t n_failed() const;
};

struct BaselineResult {
    std::string method; // "var" or "naive"
    std::size_t lag_order{0};
    std::vector<AssetScores> assets;
};

struct EvalReport {
    std::string dataset;
    Task task{Task::Forecast};
    std::vector<std::string> asset_ids;
    std::vector<std::string> holdout_dates;
    std::optional<TimeMask> mask;
    RegisterLayout layout;
    TrainingConfig config;
    std::vector<ModelResult> models;
    std::vector<BaselineResult> baselines;

    [[nodiscard]] bool partial_failure() const;
};

/// seed_i = offset + i for i < n_runs.
std::vector<std::uint64_t> derive_seeds(std::size_t n_runs,
                                        std::uint64_t offset);

/// Scores a trained model on a split's holdout.
SeedResult evaluate_model(const DatasetSplit &split, const TrainedModel &model,
                          std::size_t entropy_steps = 5);

std::vector<AssetAggregate> aggregate(const std::vector<SeedResult> &seeds,
                                      const std::vector<std::string> &ids);

std::vector<BaselineResult> run_baselines(const DatasetSplit &split,
                                          std::size_t max_lags = 50);

/// Trains one model per seed and scores it. A seed whose training fails is
/// recorded with ok = false and excluded from the aggregates.
ModelResult train_and_evaluate(const DatasetSplit &split,
                               const RegisterLayout &layout,
                               const TrainingConfig &config,
                               const std::vector<std::uint64_t> &seeds,
                               std::size_t entropy_steps = 5);

/// Builds the report skeleton (metadata, no results) for a split.
EvalReport make_report(const DatasetSplit &split, const RegisterLayout &layout,
                       const TrainingConfig &config);

EvalReport run_forecast_experiment(const DatasetSplit &split,
                                   const TrainingConfig &config,
                                   const RegisterLayout &layout = {},
                                   std::size_t max_lags = 50);

EvalReport run_imputation_experiment(const DatasetSplit &split,
                                     const TrainingConfig &config,
                                     const std::vector<std::size_t> &layers =
                                         {1, 3},
                                     const RegisterLayout &layout = {});

/// Layout matching a split: one register slot per asset, log2(m) bits each.
RegisterLayout layout_for(const DatasetSplit &split, std::size_t n_ancilla = 4);

} // namespace tqgm
