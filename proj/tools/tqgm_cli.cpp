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

// Command-line front end: ingest, train, evaluate, entropy, baseline, plot,
// synth.
//
// Exit status: 0 success, 2 when some seeds failed, 1 on a hard error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tqgm/baselines.hpp"
#include "tqgm/errors.hpp"
#include "tqgm/experiment.hpp"
#include "tqgm/market_data.hpp"
#include "tqgm/model_io.hpp"
#include "tqgm/plot.hpp"
#include "tqgm/report.hpp"
#include "tqgm/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitPartial = 2;
constexpr const char *kSeedOffsetEnv = "TQGM_SEED_OFFSET";

std::uint64_t seed_offset_from_env() {
    const char *v = std::getenv(kSeedOffsetEnv);
    if (v == nullptr || *v == '\0') {
        return 0;
    }
    return std::stoull(v);
}

json read_json(const fs::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return json::parse(in);
}

void write_json(const json &j, const fs::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << j.dump(2) << '\n';
}

std::string model_file_name(std::size_t layers, std::uint64_t seed) {
    return "L" + std::to_string(layers) + "_seed" + std::to_string(seed) +
           ".json";
}

tqgm::DatasetSplit split_from(const tqgm::PricePanel &panel, tqgm::Task task,
                              int year, std::size_t mask_start,
                              std::size_t mask_len) {
    return task == tqgm::Task::Forecast
               ? tqgm::make_forecast_split(panel, year)
               : tqgm::make_imputation_split(panel, year, mask_start,
                                             mask_len);
}

struct Manifest {
    fs::path dataset;
    int year{0};
    tqgm::Task task{tqgm::Task::Forecast};
    std::size_t mask_start{tqgm::kDefaultMaskStart};
    std::size_t mask_len{tqgm::kDefaultMaskLength};
    json raw;
};

Manifest read_manifest(const fs::path &dir) {
    Manifest m;
    m.raw = read_json(dir / "manifest.json");
    m.dataset = m.raw.at("dataset").get<std::string>();
    m.year = m.raw.at("year").get<int>();
    m.task = tqgm::task_from_string(m.raw.at("task").get<std::string>());
    m.mask_start = m.raw.value("mask_start", tqgm::kDefaultMaskStart);
    m.mask_len = m.raw.value("mask_len", tqgm::kDefaultMaskLength);
    return m;
}

// ---------------------------------------------------------------------------

int cmd_ingest(const fs::path &csv_a, const fs::path &csv_b,
               const fs::path &out) {
    const auto a = tqgm::load_csv(csv_a);
    const auto b = tqgm::load_csv(csv_b);
    const auto panel = tqgm::align(a, b);
    tqgm::write_dataset(panel, out);
    std::cout << "aligned " << panel.length() << " dates ("
              << a.size() << " / " << b.size() << " input rows) -> " << out
              << '\n';
    return kExitOk;
}

struct TrainOptions {
    fs::path dataset;
    int year{2016};
    std::string task{"forecast"};
    std::vector<std::size_t> layers{1};
    double lr{0.1};
    std::size_t steps{300};
    std::size_t seeds{5};
    std::uint64_t seed_base{0};
    int horizon{10};
    std::size_t ancilla{4};
    std::string gradient{"adjoint"};
    std::size_t mask_start{tqgm::kDefaultMaskStart};
    std::size_t mask_len{tqgm::kDefaultMaskLength};
    fs::path out;
};

int cmd_train(const TrainOptions &o) {
    const auto panel = tqgm::read_dataset(o.dataset);
    const auto task = tqgm::task_from_string(o.task);
    const auto split = split_from(panel, task, o.year, o.mask_start,
                                  o.mask_len);
    const auto layout = tqgm::layout_for(split, o.ancilla);

    tqgm::TrainingConfig config;
    config.learning_rate = o.lr;
    config.n_steps = o.steps;
    config.horizon = o.horizon;
    config.n_runs = o.seeds;
    config.seed = seed_offset_from_env() + o.seed_base;
    config.gradient_method = tqgm::gradient_method_from_string(o.gradient);
    const auto seeds = tqgm::derive_seeds(config.n_runs, config.seed);

    fs::create_directories(o.out);
    json manifest{{"format", "tqgm-model-dir/1"},
                  {"dataset", fs::absolute(o.dataset).string()},
                  {"year", o.year},
                  {"task", o.task},
                  {"mask_start", o.mask_start},
                  {"mask_len", o.mask_len},
                  {"layout", tqgm::to_json(layout)},
                  {"config", tqgm::to_json(config)},
                  {"runs", json::array()}};
    bool failed = false;
    for (auto layers : o.layers) {
        for (auto seed : seeds) {
            tqgm::TrainingConfig c = config;
            c.n_layers = layers;
            c.seed = seed;
            json run{{"layers", layers}, {"seed", seed}};
            try {
                const auto model =
                    tqgm::train(split.train, layout, c, split.mask);
                const auto file = model_file_name(layers, seed);
                tqgm::save_model(model, o.out / file);
                run["file"] = file;
                run["ok"] = true;
                std::cout << split.name << " L=" << layers << " seed " << seed
                          << ": loss " << model.loss_history.front().loss
                          << " -> " << model.loss_history.back().loss << '\n';
            } catch (const tqgm::TrainingFailure &e) {
                run["ok"] = false;
                run["error"] = e.what();
                failed = true;
                std::cerr << "seed " << seed << " failed: " << e.what()
                          << '\n';
            }
            manifest["runs"].push_back(std::move(run));
        }
    }
    write_json(manifest, o.out / "manifest.json");
    return failed ? kExitPartial : kExitOk;
}

int cmd_evaluate(const fs::path &dir, const fs::path &out,
                 std::size_t max_lags) {
    const auto manifest = read_manifest(dir);
    const auto panel = tqgm::read_dataset(manifest.dataset);
    const auto split = split_from(panel, manifest.task, manifest.year,
                                  manifest.mask_start, manifest.mask_len);
    const auto layout = tqgm::layout_from_json(manifest.raw.at("layout"));
    const auto config = tqgm::config_from_json(manifest.raw.at("config"));

    auto report = tqgm::make_report(split, layout, config);
    std::map<std::size_t, tqgm::ModelResult> by_layers;
    for (const auto &run : manifest.raw.at("runs")) {
        const auto layers = run.at("layers").get<std::size_t>();
        auto &result = by_layers[layers];
        result.n_layers = layers;
        if (!run.at("ok").get<bool>()) {
            tqgm::SeedResult failed;
            failed.seed = run.at("seed").get<std::uint64_t>();
            failed.ok = false;
            failed.error = run.value("error", std::string("training failed"));
            result.seeds.push_back(std::move(failed));
            continue;
        }
        const auto model =
            tqgm::load_model(dir / run.at("file").get<std::string>());
        result.seeds.push_back(tqgm::evaluate_model(split, model));
    }
    for (auto &[layers, result] : by_layers) {
        result.aggregate = tqgm::aggregate(result.seeds, split.asset_ids);
        report.models.push_back(std::move(result));
    }
    if (split.task == tqgm::Task::Forecast) {
        report.baselines = tqgm::run_baselines(split, max_lags);
    }
    tqgm::write_report(report, out);
    for (const auto &m : report.models) {
        for (const auto &a : m.aggregate) {
            std::cout << report.dataset << " L=" << m.n_layers << ' '
                      << a.asset_id << ": MSE " << a.mse.mean << " ("
                      << a.mse.std << "), D1 sum " << a.d1_sum.mean << " ("
                      << a.d1_sum.std << ")\n";
        }
    }
    return report.partial_failure() ? kExitPartial : kExitOk;
}

int cmd_entropy(const fs::path &dir, std::size_t steps, const fs::path &out) {
    const auto manifest = read_manifest(dir);
    const auto panel = tqgm::read_dataset(manifest.dataset);
    const auto split = split_from(panel, manifest.task, manifest.year,
                                  manifest.mask_start, manifest.mask_len);
    const auto initial = split.initial_levels();

    std::ofstream csv(out, std::ios::binary);
    if (!csv) {
        throw std::runtime_error("cannot write " + out.string());
    }
    csv << std::setprecision(17) << "seed,t,entropy_bits,max_bits\n";
    bool failed = false;
    for (const auto &run : manifest.raw.at("runs")) {
        if (!run.at("ok").get<bool>()) {
            failed = true;
            continue;
        }
        const auto model =
            tqgm::load_model(dir / run.at("file").get<std::string>());
        const auto trace = tqgm::entropy_trace(model, initial, steps);
        for (std::size_t t = 0; t < trace.entropy_bits.size(); ++t) {
            csv << model.seed << ',' << t + 1 << ',' << trace.entropy_bits[t]
                << ',' << trace.max_bits << '\n';
        }
    }
    return failed ? kExitPartial : kExitOk;
}

int cmd_baseline(const fs::path &dataset, int year, const std::string &method,
                 std::size_t max_lags, const fs::path &out) {
    const auto panel = tqgm::read_dataset(dataset);
    const auto split = tqgm::make_forecast_split(panel, year);
    const auto results = tqgm::run_baselines(split, max_lags);
    json doc{{"dataset", split.name}, {"method", method}};
    for (const auto &r : results) {
        if (r.method != method) {
            continue;
        }
        if (method == "var") {
            doc["lag_order"] = r.lag_order;
        }
        json assets = json::array();
        for (const auto &a : r.assets) {
            assets.push_back({{"asset", a.asset_id},
                              {"predicted_prices", a.predicted_prices},
                              {"actual_prices", a.actual_prices},
                              {"mse", a.mse},
                              {"d1_mean", a.d1_mean},
                              {"d1_sum", a.d1_sum}});
            std::cout << split.name << ' ' << method << ' ' << a.asset_id
                      << ": MSE " << a.mse << ", D1 sum " << a.d1_sum << '\n';
        }
        doc["assets"] = std::move(assets);
    }
    if (!out.empty()) {
        write_json(doc, out);
    }
    return kExitOk;
}

int cmd_plot(const fs::path &report, const fs::path &out) {
    for (const auto &p : tqgm::plot::write_plot_data(read_json(report), out)) {
        std::cout << p.string() << '\n';
    }
    return kExitOk;
}

int cmd_synth(const fs::path &out_dir, std::uint64_t seed) {
    tqgm::synthetic::GbmSpec spec;
    spec.seed = seed;
    const auto [a, b] = tqgm::synthetic::correlated_gbm(spec);
    fs::create_directories(out_dir);
    for (const auto *s : {&a, &b}) {
        std::ofstream out(out_dir / ("synth_" + s->asset_id + ".csv"));
        out << "Date,Close\n" << std::fixed << std::setprecision(2);
        for (const auto &o : s->observations) {
            out << tqgm::format_iso_date(o.date) << ',' << o.close << '\n';
        }
    }
    std::cout << "wrote " << a.size() << " + " << b.size() << " rows to "
              << out_dir << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Time-series quantum generative model toolkit"};
    app.require_subcommand(1);
    int status = kExitOk;

    fs::path csv_a, csv_b, ingest_out;
    auto *ingest = app.add_subcommand("ingest", "Align two price CSVs");
    ingest->add_option("--csv-a", csv_a)->required();
    ingest->add_option("--csv-b", csv_b)->required();
    ingest->add_option("--out", ingest_out)->required();
    ingest->callback([&] { status = cmd_ingest(csv_a, csv_b, ingest_out); });

    TrainOptions topt;
    auto *train = app.add_subcommand("train", "Train seeded models");
    train->add_option("--dataset", topt.dataset)->required();
    train->add_option("--year", topt.year)->required();
    train->add_option("--task", topt.task)
        ->check(CLI::IsMember({"forecast", "impute"}));
    train->add_option("--layers", topt.layers, "Layer count(s), e.g. 1,3")
        ->delimiter(',');
    train->add_option("--lr", topt.lr);
    train->add_option("--steps", topt.steps);
    train->add_option("--seeds", topt.seeds);
    train->add_option("--seed-base", topt.seed_base);
    train->add_option("--horizon", topt.horizon);
    train->add_option("--ancilla", topt.ancilla);
    train->add_option("--gradient", topt.gradient)
        ->check(CLI::IsMember({"adjoint", "parameter-shift", "parameter_shift",
                               "finite-difference", "finite_difference"}));
    train->add_option("--mask-start", topt.mask_start);
    train->add_option("--mask-len", topt.mask_len);
    train->add_option("--out", topt.out)->required();
    train->callback([&] { status = cmd_train(topt); });

    fs::path eval_dir, eval_out;
    std::size_t eval_lags = 50;
    auto *evaluate = app.add_subcommand("evaluate", "Score trained models");
    evaluate->add_option("--model-dir", eval_dir)->required();
    evaluate->add_option("--out", eval_out)->required();
    evaluate->add_option("--max-lags", eval_lags);
    evaluate->callback(
        [&] { status = cmd_evaluate(eval_dir, eval_out, eval_lags); });

    fs::path ent_dir, ent_out;
    std::size_t ent_steps = 5;
    auto *entropy = app.add_subcommand("entropy", "Entanglement entropy trace");
    entropy->add_option("--model-dir", ent_dir)->required();
    entropy->add_option("--steps", ent_steps);
    entropy->add_option("--out", ent_out)->required();
    entropy->callback(
        [&] { status = cmd_entropy(ent_dir, ent_steps, ent_out); });

    fs::path base_dataset, base_out;
    int base_year = 2016;
    std::string base_method = "var";
    std::size_t base_lags = 50;
    auto *baseline = app.add_subcommand("baseline", "Classical forecasters");
    baseline->add_option("--dataset", base_dataset)->required();
    baseline->add_option("--year", base_year)->required();
    baseline->add_option("--method", base_method)
        ->check(CLI::IsMember({"var", "naive"}));
    baseline->add_option("--max-lags", base_lags);
    baseline->add_option("--out", base_out);
    baseline->callback([&] {
        status = cmd_baseline(base_dataset, base_year, base_method, base_lags,
                              base_out);
    });

    fs::path plot_report, plot_out;
    auto *plot = app.add_subcommand("plot", "Emit plot CSVs and SVG charts");
    plot->add_option("--report", plot_report)->required();
    plot->add_option("--out", plot_out)->required();
    plot->callback([&] { status = cmd_plot(plot_report, plot_out); });

    fs::path synth_out;
    std::uint64_t synth_seed = 2016;
    auto *synth = app.add_subcommand("synth", "Generate synthetic price CSVs");
    synth->add_option("--out-dir", synth_out)->required();
    synth->add_option("--seed", synth_seed);
    synth->callback([&] { status = cmd_synth(synth_out, synth_seed); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return status;
}
