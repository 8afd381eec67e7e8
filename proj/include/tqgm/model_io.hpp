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

#include <filesystem>

#include <json.hpp>

#include "tqgm/model.hpp"

namespace tqgm {

nlohmann::json to_json(const RegisterLayout &layout);
nlohmann::json to_json(const TrainingConfig &config);
nlohmann::json to_json(const TrainedModel &model);

RegisterLayout layout_from_json(const nlohmann::json &j);
TrainingConfig config_from_json(const nlohmann::json &j);
TrainedModel model_from_json(const nlohmann::json &j);

/// Doubles are written in shortest round-trip form, so a save/load cycle
/// reproduces every parameter bit for bit.
void save_model(const TrainedModel &model, const std::filesystem::path &path);
TrainedModel load_model(const std::filesystem::path &path);

} // namespace tqgm
