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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tqgm {

/// Raised when a gradient or loss evaluation produces a non-finite value.
class NumericalFailure : public std::runtime_error {
  public:
    NumericalFailure(const std::string &what, std::size_t parameter_index)
        : std::runtime_error(what + " (parameter " +
                             std::to_string(parameter_index) + ")"),
          parameter_index_(parameter_index) {}

    [[nodiscard]] std::size_t parameter_index() const noexcept {
        return parameter_index_;
    }

  private:
    std::size_t parameter_index_;
};

/// Training aborted; carries the optimizer step at which it happened.
class TrainingFailure : public std::runtime_error {
  public:
    TrainingFailure(const std::string &what, std::size_t step)
        : std::runtime_error("step " + std::to_string(step) + ": " + what),
          step_(step) {}

    [[nodiscard]] std::size_t step() const noexcept { return step_; }

  private:
    std::size_t step_;
};

/// Malformed input row; `line` is 1-based.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string &source, std::size_t line,
               const std::string &what)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " +
                             what),
          line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

class SchemaError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class DegenerateBins : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class RankDeficiency : public std::runtime_error {
  public:
    RankDeficiency(const std::string &what, std::size_t lag_order)
        : std::runtime_error(what + " (p = " + std::to_string(lag_order) +
                             ")"),
          lag_order_(lag_order) {}

    [[nodiscard]] std::size_t lag_order() const noexcept { return lag_order_; }

  private:
    std::size_t lag_order_;
};

} // namespace tqgm
