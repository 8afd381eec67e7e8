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

#include "tqgm/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "tqgm/errors.hpp"
#include "tqgm/random.hpp"

namespace tqgm {

std::string to_string(GradientMethod m) {
    switch (m) {
    case GradientMethod::ParameterShift:
        return "parameter_shift";
    case GradientMethod::Adjoint:
        return "adjoint";
    case GradientMethod::FiniteDifference:
        return "finite_difference";
    }
    return "unknown";
}

GradientMethod gradient_method_from_string(std::string_view s) {
    if (s == "parameter_shift" || s == "parameter-shift") {
        return GradientMethod::ParameterShift;
    }
    if (s == "adjoint") {
        return GradientMethod::Adjoint;
    }
    if (s == "finite_difference" || s == "finite-difference") {
        return GradientMethod::FiniteDifference;
    }
    throw std::invalid_argument("unknown gradient method '" + std::string(s) +
                                "'");
}

void TrainingConfig::validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw std::invalid_argument("learning rate must be > 0");
    }
    if (horizon < 1) {
        throw std::invalid_argument("horizon K must be >= 1");
    }
    if (n_layers < 1) {
        throw std::invalid_argument("need at least one layer");
    }
    if (n_runs < 1) {
        throw std::invalid_argument("need at least one run");
    }
}

std::vector<TrainingSample>
make_training_set(const DiscreteSeries &series, int K,
                  const std::optional<TimeMask> &mask) {
    if (K < 1) {
        throw std::invalid_argument("make_training_set: K must be >= 1");
    }
    series.validate();
    const std::size_t T = series.length();
    if (T < static_cast<std::size_t>(K) + 1) {
        throw std::invalid_argument("series of length " + std::to_string(T) +
                                    " is shorter than K + 1 = " +
                                    std::to_string(K + 1));
    }
    auto observed = [&](std::size_t t) {
        if (mask && mask->contains(t)) {
            return false;
        }
        for (const auto &asset : series.levels) {
            if (asset[t] == kMissingLevel) {
                return false;
            }
        }
        return true;
    };
    std::vector<TrainingSample> out;
    for (std::size_t t = 0; t < T; ++t) {
        if (!observed(t)) {
            continue;
        }
        const auto source = series.levels_at(t);
        for (int k = 1; k <= K && t + static_cast<std::size_t>(k) < T; ++k) {
            const std::size_t u = t + static_cast<std::size_t>(k);
            if (!observed(u)) {
                continue;
            }
            out.push_back({source, series.levels_at(u), k, t});
        }
    }
    return out;
}

SampleGroups SampleGroups::build(const RegisterLayout &layout,
                                 std::span<const TrainingSample> samples) {
    std::map<std::pair<std::size_t, int>, std::map<std::size_t, double>> acc;
    for (const auto &s : samples) {
        if (s.k < 0) {
            throw std::invalid_argument("sample step offset must be >= 0");
        }
        const auto src = layout.encode(s.source_levels);
        const auto dst = layout.encode(s.target_levels);
        acc[{src, s.k}][dst] += 1.0;
    }
    SampleGroups out;
    out.total_weight = static_cast<double>(samples.size());
    for (const auto &[key, targets] : acc) {
        Group g;
        g.source = key.first;
        g.k = key.second;
        g.targets.assign(targets.begin(), targets.end());
        out.groups.push_back(std::move(g));
    }
    return out;
}

ModelParams initial_params(const RegisterLayout &layout, std::size_t n_layers,
                           std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> v(ModelParams::count(layout.n_qubits(), n_layers));
    for (auto &x : v) {
        x = rng.uniform(-std::numbers::pi, std::numbers::pi);
    }
    return ModelParams(layout.n_qubits(), n_layers, std::move(v));
}

TrainedModel train(std::span<const TrainingSample> samples,
                   const RegisterLayout &layout, const TrainingConfig &config) {
    config.validate();
    layout.validate();
    if (samples.empty()) {
        throw std::invalid_argument("train: empty training set");
    }
    const auto groups = SampleGroups::build(layout, samples);

    TrainedModel model{layout,
                       initial_params(layout, config.n_layers, config.seed),
                       {},
                       config,
                       config.seed};
    model.loss_history.reserve(config.n_steps + 1);

    constexpr double beta1 = 0.9;
    constexpr double beta2 = 0.999;
    constexpr double eps = 1e-8;
    std::vector<double> m(model.params.size(), 0.0);
    std::vector<double> v(model.params.size(), 0.0);
    double beta1_t = 1.0;
    double beta2_t = 1.0;

    for (std::size_t step = 0; step < config.n_steps; ++step) {
        LossAndGradient lg;
        try {
            lg = loss_and_gradient(layout, model.params, groups,
                                   config.gradient_method, config.fd_step);
        } catch (const NumericalFailure &e) {
            throw TrainingFailure(e.what(), step);
        }
        model.loss_history.push_back({step, lg.loss});
        beta1_t *= beta1;
        beta2_t *= beta2;
        auto theta = model.params.values();
        for (std::size_t i = 0; i < theta.size(); ++i) {
            const double g = lg.gradient[i];
            m[i] = beta1 * m[i] + (1 - beta1) * g;
            v[i] = beta2 * v[i] + (1 - beta2) * g * g;
            const double m_hat = m[i] / (1 - beta1_t);
            const double v_hat = v[i] / (1 - beta2_t);
            theta[i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + eps);
        }
    }
    try {
        model.loss_history.push_back(
            {config.n_steps, nll_loss(layout, model.params, groups)});
    } catch (const NumericalFailure &e) {
        throw TrainingFailure(e.what(), config.n_steps);
    }
    return model;
}

TrainedModel train(const DiscreteSeries &series, const RegisterLayout &layout,
                   const TrainingConfig &config,
                   const std::optional<TimeMask> &mask) {
    config.validate();
    if (series.n_assets() != layout.n_assets ||
        series.m != layout.levels_per_asset()) {
        throw std::invalid_argument("series does not match register layout");
    }
    const auto samples = make_training_set(series, config.horizon, mask);
    return train(samples, layout, config);
}

Eigen::MatrixXd extract_transition_matrix(const RegisterLayout &layout,
                                          const ModelParams &params) {
    const auto m = static_cast<Eigen::Index>(layout.n_joint_states());
    Eigen::MatrixXd T(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        const auto levels = layout.decode(static_cast<std::size_t>(j));
        const auto p = model_distribution(layout, params, levels, 1);
        for (Eigen::Index i = 0; i < m; ++i) {
            T(i, j) = p[static_cast<std::size_t>(i)];
        }
    }
    return T;
}

Eigen::MatrixXd extract_transition_matrix(const TrainedModel &model) {
    return extract_transition_matrix(model.layout, model.params);
}

} // namespace tqgm
