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
#include <string>

#include <json.hpp>

#include "tqgm/experiment.hpp"

namespace tqgm {

nlohmann::json to_json(const EvalReport &report);

/// Pretty-printed JSON with a trailing newline; identical inputs give
/// identical bytes.
std::string render_report(const EvalReport &report);
void write_report(const EvalReport &report, const std::filesystem::path &path);

} // namespace tqgm
