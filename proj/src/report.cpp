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

#include "tqgm/report.hpp"

#include <fstream>
#include <stdexcept>

#include "tqgm/model_io.hpp"

namespace tqgm {

using nlohmann::json;

namespace {

json to_json(const Summary &s) { return {{"mean", s.mean}, {"std", s.std}}; }

json to_json(const CumulativeFit &f) {
    return {{"slope", f.slope},
            {"intercept", f.intercept},
            {"r_squared", f.r_squared},
            {"curve", f.curve}};
}

json to_json(const AssetScores &s) {
    return {{"asset", s.asset_id},
            {"predicted_levels", s.predicted_levels},
            {"true_levels", s.true_levels},
            {"predicted_values", s.predicted_values},
            {"predicted_prices", s.predicted_prices},
            {"actual_prices", s.actual_prices},
            {"mse", s.mse},
            {"d1_mean", s.d1_mean},
            {"d1_sum", s.d1_sum},
            {"cumulative", to_json(s.fit)}};
}

json to_json(const SeedResult &r) {
    json j{{"seed", r.seed}, {"ok", r.ok}};
    if (!r.ok) {
        j["error"] = r.error;
        return j;
    }
    json assets = json::array();
    for (const auto &a : r.assets) {
        assets.push_back(to_json(a));
    }
    json history = json::array();
    for (const auto &h : r.loss_history) {
        history.push_back({h.step, h.loss});
    }
    j["assets"] = std::move(assets);
    j["loss_history"] = std::move(history);
    j["entropy"] = {{"entropy_bits", r.entropy.entropy_bits},
                    {"max_bits", r.entropy.max_bits}};
    return j;
}

json to_json(const ModelResult &m) {
    json seeds = json::array();
    for (const auto &s : m.seeds) {
        seeds.push_back(to_json(s));
    }
    json agg = json::array();
    for (const auto &a : m.aggregate) {
        agg.push_back({{"asset", a.asset_id},
                       {"mse", to_json(a.mse)},
                       {"d1_mean", to_json(a.d1_mean)},
                       {"d1_sum", to_json(a.d1_sum)},
                       {"slope", to_json(a.slope)},
                       {"r_squared", to_json(a.r_squared)}});
    }
    return {{"label", "tqgm L=" + std::to_string(m.n_layers)},
            {"n_layers", m.n_layers},
            {"n_seeds", m.seeds.size()},
            {"n_failed", m.n_failed()},
            {"seeds", std::move(seeds)},
            {"aggregate", std::move(agg)}};
}

json to_json(const BaselineResult &b) {
    json assets = json::array();
    for (const auto &a : b.assets) {
        assets.push_back(to_json(a));
    }
    json j{{"method", b.method}, {"assets", std::move(assets)}};
    if (b.method == "var") {
        j["lag_order"] = b.lag_order;
    }
    return j;
}

} // namespace

json to_json(const EvalReport &report) {
    json models = json::array();
    for (const auto &m : report.models) {
        models.push_back(to_json(m));
    }
    json baselines = json::array();
    for (const auto &b : report.baselines) {
        baselines.push_back(to_json(b));
    }
    json j{{"format", "tqgm-report/1"},
           {"dataset", report.dataset},
           {"task", to_string(report.task)},
           {"assets", report.asset_ids},
           {"holdout_dates", report.holdout_dates},
           {"layout", tqgm::to_json(report.layout)},
           {"config", tqgm::to_json(report.config)},
           {"models", std::move(models)},
           {"baselines", std::move(baselines)},
           {"partial_failure", report.partial_failure()}};
    if (report.mask) {
        j["mask"] = {{"start", report.mask->start},
                     {"length", report.mask->length}};
    }
    return j;
}

std::string render_report(const EvalReport &report) {
    return to_json(report).dump(2) + "\n";
}

void write_report(const EvalReport &report, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << render_report(report);
}

} // namespace tqgm
