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

// Loss and gradient evaluation over grouped training samples.
//
// Every sample group shares a source state s and a step count k, so the
// circuit V Sigma(k gamma) V^dagger |s, 0> is simulated once per group and
// the V^dagger |s, 0> prefix once per source. Rot gates are lowered to
// RZ RY RZ so each angle is a single-generator rotation.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tqgm/errors.hpp"
#include "tqgm/model.hpp"

namespace tqgm {
namespace {

using qsim::Complex;
using qsim::GateKind;

struct Op {
    GateKind kind{GateKind::X};
    std::size_t w0{0};
    std::size_t w1{0};
    double angle{0.0};
    long param{-1};
    double scale{0.0};
};

std::vector<Op> lower(const qsim::Circuit &circuit) {
    std::vector<Op> ops;
    ops.reserve(circuit.size() * 3);
    auto single = [](GateKind kind, std::size_t w, double angle,
                     const std::optional<qsim::ParamRef> &p) {
        Op op{kind, w, 0, angle, -1, 0.0};
        if (p) {
            op.param = static_cast<long>(p->index);
            op.scale = p->scale;
        }
        return op;
    };
    for (const auto &g : circuit) {
        switch (g.kind) {
        case GateKind::Rot:
            ops.push_back(single(GateKind::RZ, g.wires[0], g.angles[0],
                                 g.params[0]));
            ops.push_back(single(GateKind::RY, g.wires[0], g.angles[1],
                                 g.params[1]));
            ops.push_back(single(GateKind::RZ, g.wires[0], g.angles[2],
                                 g.params[2]));
            break;
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
            ops.push_back(single(g.kind, g.wires[0], g.angles[0], g.params[0]));
            break;
        case GateKind::CNOT:
            ops.push_back(Op{g.kind, g.wires[0], g.wires[1], 0.0, -1, 0.0});
            break;
        case GateKind::X:
            ops.push_back(Op{g.kind, g.wires[0], 0, 0.0, -1, 0.0});
            break;
        }
    }
    return ops;
}

void apply_op(std::span<Complex> amps, std::size_t n, const Op &op,
              double angle) {
    switch (op.kind) {
    case GateKind::RZ:
        qsim::apply_rz_inplace(amps, n, op.w0, angle);
        break;
    case GateKind::RY:
        qsim::apply_ry_inplace(amps, n, op.w0, angle);
        break;
    case GateKind::CNOT:
        qsim::apply_cnot_inplace(amps, n, op.w0, op.w1);
        break;
    default:
        qsim::Gate g;
        g.kind = op.kind;
        g.wires = {op.w0, 0};
        g.angles[0] = angle;
        qsim::apply_matrix2_inplace(amps, n, op.w0,
                                    qsim::single_qubit_matrix(g));
        break;
    }
}

void apply_ops(std::span<Complex> amps, std::size_t n, std::span<const Op> ops) {
    for (const auto &op : ops) {
        apply_op(amps, n, op, op.angle);
    }
}

// Im <lambda| P |psi> where P is the generator of a rotation op
// (R(a) = exp(-i a P / 2)). This equals d<O>/da at the op's output.
double generator_overlap(std::span<const Complex> lambda,
                         std::span<const Complex> psi, std::size_t n,
                         const Op &op) {
    const std::size_t mask = std::size_t{1} << (n - 1 - op.w0);
    const std::size_t dim = psi.size();
    Complex acc{0.0, 0.0};
    for (std::size_t base = 0; base < dim; base += 2 * mask) {
        for (std::size_t i = base; i < base + mask; ++i) {
            const std::size_t j = i + mask;
            switch (op.kind) {
            case GateKind::RZ:
                acc += std::conj(lambda[i]) * psi[i] -
                       std::conj(lambda[j]) * psi[j];
                break;
            case GateKind::RY:
                // Y|0> = i|1>, Y|1> = -i|0>
                acc += std::conj(lambda[i]) * Complex(psi[j].imag(),
                                                      -psi[j].real()) +
                       std::conj(lambda[j]) * Complex(-psi[i].imag(),
                                                      psi[i].real());
                break;
            case GateKind::RX:
                acc += std::conj(lambda[i]) * psi[j] +
                       std::conj(lambda[j]) * psi[i];
                break;
            default:
                throw std::logic_error("generator of a non-rotation op");
            }
        }
    }
    return acc.imag();
}

class Evaluator {
  public:
    Evaluator(const RegisterLayout &layout, const ModelParams &params)
        : layout_(layout), params_(params), n_(layout.n_qubits()),
          dim_(std::size_t{1} << n_), vdag_(lower(build_V_dagger(params))),
          v_(lower(build_V(params))) {
        if (params.n_qubits() != n_) {
            throw std::invalid_argument(
                "parameter and layout qubit counts differ");
        }
    }

    [[nodiscard]] std::size_t dim() const { return dim_; }

    // V^dagger |source, 0...0>
    std::vector<Complex> prefix(std::size_t source) const {
        std::vector<Complex> a(dim_, Complex{0.0, 0.0});
        a[source << layout_.n_ancilla] = 1.0;
        apply_ops(a, n_, vdag_);
        return a;
    }

    std::vector<Op> sigma(int k) const {
        return lower(build_Sigma(params_, k));
    }

    // Target-register marginal.
    std::vector<double> marginal(std::span<const Complex> psi) const {
        std::vector<double> p(layout_.n_joint_states(), 0.0);
        for (std::size_t i = 0; i < dim_; ++i) {
            p[i >> layout_.n_ancilla] += std::norm(psi[i]);
        }
        return p;
    }

    // Final state of a group (k >= 1) given its source prefix.
    std::vector<Complex> finish(std::span<const Complex> a, int k) const {
        std::vector<Complex> psi(a.begin(), a.end());
        apply_ops(psi, n_, sigma(k));
        apply_ops(psi, n_, v_);
        return psi;
    }

    std::vector<double> group_probs(const SampleGroups::Group &g,
                                    const std::vector<Complex> &a) const {
        if (g.k == 0) {
            std::vector<double> p(layout_.n_joint_states(), 0.0);
            p[g.source] = 1.0;
            return p;
        }
        return marginal(finish(a, g.k));
    }

    const RegisterLayout &layout_;
    const ModelParams &params_;
    std::size_t n_;
    std::size_t dim_;
    std::vector<Op> vdag_;
    std::vector<Op> v_;
};

double group_loss(const SampleGroups::Group &g, std::span<const double> p) {
    double acc = 0.0;
    for (const auto &[t, c] : g.targets) {
        acc -= c * std::log(std::max(p[t], kProbabilityFloor));
    }
    return acc;
}

// d(-log max(p, floor))/dp weights: c / p, zero where the floor is active.
std::vector<double> target_weights(const SampleGroups::Group &g,
                                   std::span<const double> p) {
    std::vector<double> w(p.size(), 0.0);
    for (const auto &[t, c] : g.targets) {
        if (p[t] >= kProbabilityFloor) {
            w[t] += c / p[t];
        }
    }
    return w;
}

// Backward sweep over `ops`: on entry psi/lambda are taken at the output of
// the last op; on exit at the input of the first op.
void backward(std::span<Complex> psi, std::span<Complex> lambda,
              std::size_t n, std::span<const Op> ops,
              std::vector<double> &grad) {
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        if (it->param >= 0) {
            grad[static_cast<std::size_t>(it->param)] +=
                it->scale * generator_overlap(lambda, psi, n, *it);
        }
        const double inv = -it->angle;
        apply_op(psi, n, *it, inv);
        apply_op(lambda, n, *it, inv);
    }
}

template <class Fn>
void for_each_source(const SampleGroups &groups, Fn &&fn) {
    std::size_t i = 0;
    while (i < groups.groups.size()) {
        std::size_t j = i;
        while (j < groups.groups.size() &&
               groups.groups[j].source == groups.groups[i].source) {
            ++j;
        }
        fn(groups.groups[i].source,
           std::span<const SampleGroups::Group>(groups.groups.data() + i,
                                                j - i));
        i = j;
    }
}

void require_samples(const SampleGroups &groups) {
    if (groups.groups.empty() || !(groups.total_weight > 0.0)) {
        throw std::invalid_argument("loss needs at least one training sample");
    }
}

void check_finite(std::span<const double> grad, const char *what) {
    for (std::size_t i = 0; i < grad.size(); ++i) {
        if (!std::isfinite(grad[i])) {
            throw NumericalFailure(std::string("non-finite ") + what, i);
        }
    }
}

LossAndGradient adjoint(const RegisterLayout &layout, const ModelParams &params,
                        const SampleGroups &groups) {
    const Evaluator ev(layout, params);
    const std::size_t n = layout.n_qubits();
    LossAndGradient out;
    out.gradient.assign(params.size(), 0.0);

    for_each_source(groups, [&](std::size_t source, auto source_groups) {
        const auto a = ev.prefix(source);
        std::vector<Complex> lambda_sum(ev.dim(), Complex{0.0, 0.0});
        bool any = false;
        for (const auto &g : source_groups) {
            if (g.k == 0) {
                std::vector<double> p(layout.n_joint_states(), 0.0);
                p[g.source] = 1.0;
                out.loss += group_loss(g, p);
                continue;
            }
            auto psi = ev.finish(a, g.k);
            const auto p = ev.marginal(psi);
            out.loss += group_loss(g, p);
            const auto w = target_weights(g, p);
            std::vector<Complex> lambda(psi.size());
            for (std::size_t i = 0; i < psi.size(); ++i) {
                lambda[i] = w[i >> layout.n_ancilla] * psi[i];
            }
            backward(psi, lambda, n, ev.v_, out.gradient);
            backward(psi, lambda, n, ev.sigma(g.k), out.gradient);
            for (std::size_t i = 0; i < lambda.size(); ++i) {
                lambda_sum[i] += lambda[i];
            }
            any = true;
        }
        if (any) {
            // The V^dagger prefix is k-independent, so the co-states of all
            // groups sharing this source are propagated together.
            auto psi = a;
            backward(psi, lambda_sum, n, ev.vdag_, out.gradient);
        }
    });

    const double inv_n = 1.0 / groups.total_weight;
    out.loss *= inv_n;
    for (auto &g : out.gradient) {
        g *= -inv_n;
    }
    return out;
}

LossAndGradient parameter_shift(const RegisterLayout &layout,
                                const ModelParams &params,
                                const SampleGroups &groups) {
    const Evaluator ev(layout, params);
    const std::size_t n = layout.n_qubits();
    constexpr double kShift = std::numbers::pi / 2;
    LossAndGradient out;
    out.gradient.assign(params.size(), 0.0);

    for (const auto &g : groups.groups) {
        if (g.k == 0) {
            std::vector<double> p(layout.n_joint_states(), 0.0);
            p[g.source] = 1.0;
            out.loss += group_loss(g, p);
            continue;
        }
        std::vector<Op> ops = ev.vdag_;
        const auto sig = ev.sigma(g.k);
        ops.insert(ops.end(), sig.begin(), sig.end());
        ops.insert(ops.end(), ev.v_.begin(), ev.v_.end());

        // states[i] is the input of op i.
        std::vector<std::vector<Complex>> states;
        states.reserve(ops.size() + 1);
        std::vector<Complex> psi(ev.dim(), Complex{0.0, 0.0});
        psi[g.source << layout.n_ancilla] = 1.0;
        for (const auto &op : ops) {
            states.push_back(psi);
            apply_op(psi, n, op, op.angle);
        }
        const auto p = ev.marginal(psi);
        out.loss += group_loss(g, p);
        const auto w = target_weights(g, p);

        // <O> with O = sum_t w_t P_t held at the unshifted probabilities,
        // so the shift difference carries the chain rule through the log.
        auto expectation = [&](std::span<const Complex> s) {
            double acc = 0.0;
            for (std::size_t i = 0; i < s.size(); ++i) {
                acc += w[i >> layout.n_ancilla] * std::norm(s[i]);
            }
            return acc;
        };
        for (std::size_t i = 0; i < ops.size(); ++i) {
            const auto &op = ops[i];
            if (op.param < 0) {
                continue;
            }
            double f[2];
            for (int sgn = 0; sgn < 2; ++sgn) {
                auto s = states[i];
                apply_op(s, n, op, op.angle + (sgn == 0 ? kShift : -kShift));
                apply_ops(s, n,
                          std::span<const Op>(ops).subspan(i + 1));
                f[sgn] = expectation(s);
            }
            out.gradient[static_cast<std::size_t>(op.param)] +=
                op.scale * 0.5 * (f[0] - f[1]);
        }
    }
    const double inv_n = 1.0 / groups.total_weight;
    out.loss *= inv_n;
    for (auto &gr : out.gradient) {
        gr *= -inv_n;
    }
    return out;
}

LossAndGradient finite_difference(const RegisterLayout &layout,
                                  const ModelParams &params,
                                  const SampleGroups &groups, double h) {
    if (!(h > 0.0)) {
        throw std::invalid_argument("finite-difference step must be > 0");
    }
    LossAndGradient out;
    out.loss = nll_loss(layout, params, groups);
    out.gradient.assign(params.size(), 0.0);
    ModelParams probe = params;
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double x = params.values()[i];
        probe.values()[i] = x + h;
        const double up = nll_loss(layout, probe, groups);
        probe.values()[i] = x - h;
        const double down = nll_loss(layout, probe, groups);
        probe.values()[i] = x;
        out.gradient[i] = (up - down) / (2 * h);
    }
    return out;
}

} // namespace

double nll_loss(const RegisterLayout &layout, const ModelParams &params,
                const SampleGroups &groups) {
    require_samples(groups);
    const Evaluator ev(layout, params);
    double loss = 0.0;
    for_each_source(groups, [&](std::size_t source, auto source_groups) {
        const auto a = ev.prefix(source);
        for (const auto &g : source_groups) {
            loss += group_loss(g, ev.group_probs(g, a));
        }
    });
    loss /= groups.total_weight;
    if (!std::isfinite(loss)) {
        throw NumericalFailure("non-finite loss", 0);
    }
    return loss;
}

double nll_loss(const RegisterLayout &layout, const ModelParams &params,
                std::span<const TrainingSample> samples) {
    return nll_loss(layout, params, SampleGroups::build(layout, samples));
}

LossAndGradient loss_and_gradient(const RegisterLayout &layout,
                                  const ModelParams &params,
                                  const SampleGroups &groups,
                                  GradientMethod method, double fd_step) {
    require_samples(groups);
    LossAndGradient out;
    switch (method) {
    case GradientMethod::Adjoint:
        out = adjoint(layout, params, groups);
        break;
    case GradientMethod::ParameterShift:
        out = parameter_shift(layout, params, groups);
        break;
    case GradientMethod::FiniteDifference:
        out = finite_difference(layout, params, groups, fd_step);
        break;
    }
    if (!std::isfinite(out.loss)) {
        throw NumericalFailure("non-finite loss", 0);
    }
    check_finite(out.gradient, "gradient");
    return out;
}

std::vector<double> gradient(const RegisterLayout &layout,
                             const ModelParams &params,
                             std::span<const TrainingSample> samples,
                             GradientMethod method, double fd_step) {
    return loss_and_gradient(layout, params,
                             SampleGroups::build(layout, samples), method,
                             fd_step)
        .gradient;
}

} // namespace tqgm
