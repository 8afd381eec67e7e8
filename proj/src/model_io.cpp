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

#include "tqgm/model_io.hpp"

#include <fstream>
#include <stdexcept>

namespace tqgm {

using nlohmann::json;

json to_json(const RegisterLayout &layout) {
    return {{"n_assets", layout.n_assets},
            {"bits_per_asset", layout.bits_per_asset},
            {"n_ancilla", layout.n_ancilla}};
}

json to_json(const TrainingConfig &c) {
    return {{"learning_rate", c.learning_rate},
            {"n_steps", c.n_steps},
            {"horizon", c.horizon},
            {"n_layers", c.n_layers},
            {"seed", c.seed},
            {"n_runs", c.n_runs},
            {"gradient_method", to_string(c.gradient_method)},
            {"fd_step", c.fd_step}};
}

json to_json(const TrainedModel &model) {
    json history = json::array();
    for (const auto &r : model.loss_history) {
        history.push_back({r.step, r.loss});
    }
    const auto values = model.params.values();
    return {{"format", "tqgm-model/1"},
            {"layout", to_json(model.layout)},
            {"params",
             {{"n_qubits", model.params.n_qubits()},
              {"n_layers", model.params.n_layers()},
              {"values", std::vector<double>(values.begin(), values.end())}}},
            {"config", to_json(model.config)},
            {"seed", model.seed},
            {"loss_history", std::move(history)}};
}

RegisterLayout layout_from_json(const json &j) {
    RegisterLayout l;
    l.n_assets = j.at("n_assets").get<std::size_t>();
    l.bits_per_asset = j.at("bits_per_asset").get<std::size_t>();
    l.n_ancilla = j.at("n_ancilla").get<std::size_t>();
    l.validate();
    return l;
}

TrainingConfig config_from_json(const json &j) {
    TrainingConfig c;
    c.learning_rate = j.at("learning_rate").get<double>();
    c.n_steps = j.at("n_steps").get<std::size_t>();
    c.horizon = j.at("horizon").get<int>();
    c.n_layers = j.at("n_layers").get<std::size_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.n_runs = j.at("n_runs").get<std::size_t>();
    c.gradient_method =
        gradient_method_from_string(j.at("gradient_method").get<std::string>());
    c.fd_step = j.value("fd_step", 1e-5);
    return c;
}

TrainedModel model_from_json(const json &j) {
    if (j.value("format", "") != "tqgm-model/1") {
        throw std::invalid_argument("not a tqgm model document");
    }
    const auto &p = j.at("params");
    TrainedModel m{layout_from_json(j.at("layout")),
                   ModelParams(p.at("n_qubits").get<std::size_t>(),
                               p.at("n_layers").get<std::size_t>(),
                               p.at("values").get<std::vector<double>>()),
                   {},
                   config_from_json(j.at("config")),
                   j.at("seed").get<std::uint64_t>()};
    if (m.params.n_qubits() != m.layout.n_qubits()) {
        throw std::invalid_argument("model parameters do not match layout");
    }
    for (const auto &r : j.at("loss_history")) {
        m.loss_history.push_back(
            {r.at(0).get<std::size_t>(), r.at(1).get<double>()});
    }
    return m;
}

void save_model(const TrainedModel &model, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << to_json(model).dump(2) << '\n';
}

TrainedModel load_model(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return model_from_json(json::parse(in));
}

} // namespace tqgm
