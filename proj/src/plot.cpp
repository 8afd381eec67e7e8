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

#include "tqgm/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace tqgm::plot {
namespace {

constexpr const char *kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c",
                                    "#d62728", "#9467bd", "#8c564b",
                                    "#e377c2", "#7f7f7f", "#bcbd22",
                                    "#17becf"};

std::string escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '&':
            out += "&amp;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

} // namespace

std::string svg_line_chart(const ChartSpec &spec,
                           const std::vector<Series> &series) {
    double x0 = std::numeric_limits<double>::infinity();
    double x1 = -x0;
    double y0 = x0;
    double y1 = -x0;
    for (const auto &s : series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.y[i])) {
                continue;
            }
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    }
    if (std::isfinite(spec.reference)) {
        y0 = std::min(y0, spec.reference);
        y1 = std::max(y1, spec.reference);
    }
    if (!std::isfinite(x0)) {
        x0 = 0.0;
        x1 = 1.0;
        y0 = 0.0;
        y1 = 1.0;
    }
    if (x1 == x0) {
        x1 = x0 + 1.0;
    }
    if (y1 == y0) {
        y1 = y0 + 1.0;
    }
    const double left = 70;
    const double right = 150;
    const double top = 40;
    const double bottom = 50;
    const double pw = spec.width - left - right;
    const double ph = spec.height - top - bottom;
    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

    std::ostringstream os;
    os << std::setprecision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
       << "\" height=\"" << spec.height << "\" font-family=\"sans-serif\" "
       << "font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << spec.width / 2 << "\" y=\"22\" text-anchor=\"middle\""
       << " font-size=\"15\">" << escape(spec.title) << "</text>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw
       << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = x0 + (x1 - x0) * i / 4.0;
        const double fy = y0 + (y1 - y0) * i / 4.0;
        os << "<text x=\"" << px(fx) << "\" y=\"" << top + ph + 16
           << "\" text-anchor=\"middle\">" << fx << "</text>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << py(fy) + 4
           << "\" text-anchor=\"end\">" << fy << "</text>\n";
    }
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << spec.height - 10
       << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
    os << "<text transform=\"translate(16," << top + ph / 2
       << ") rotate(-90)\" text-anchor=\"middle\">" << escape(spec.y_label)
       << "</text>\n";
    if (std::isfinite(spec.reference)) {
        os << "<line x1=\"" << left << "\" x2=\"" << left + pw << "\" y1=\""
           << py(spec.reference) << "\" y2=\"" << py(spec.reference)
           << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
    }
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto &s = series[k];
        const char *color = kPalette[k % std::size(kPalette)];
        os << "<polyline fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (std::isfinite(s.y[i])) {
                os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
            }
        }
        os << "\"/>\n";
        const double ly = top + 14.0 * static_cast<double>(k) + 8;
        os << "<line x1=\"" << left + pw + 10 << "\" x2=\"" << left + pw + 30
           << "\" y1=\"" << ly << "\" y2=\"" << ly << "\" stroke=\"" << color
           << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << left + pw + 34 << "\" y=\"" << ly + 4 << "\">"
           << escape(s.name) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::vector<std::filesystem::path>
write_plot_data(const nlohmann::json &report,
                const std::filesystem::path &out_dir) {
    std::filesystem::create_directories(out_dir);
    std::ostringstream loss_csv;
    std::ostringstream cum_csv;
    std::ostringstream ent_csv;
    loss_csv << std::setprecision(17) << "model,seed,step,loss\n";
    cum_csv << std::setprecision(17) << "source,seed,asset,step,cumulative_d1\n";
    ent_csv << std::setprecision(17) << "model,seed,t,entropy_bits,max_bits\n";

    std::vector<Series> loss_series;
    std::vector<Series> cum_series;
    std::vector<Series> ent_series;
    double max_bits = std::numeric_limits<double>::quiet_NaN();

    auto add_cumulative = [&](const std::string &source,
                              const std::string &seed,
                              const nlohmann::json &asset) {
        const auto name = asset.at("asset").get<std::string>();
        Series s{source + " " + name + (seed.empty() ? "" : " s" + seed),
                 {},
                 {}};
        const auto curve =
            asset.at("cumulative").at("curve").get<std::vector<double>>();
        for (std::size_t i = 0; i < curve.size(); ++i) {
            cum_csv << source << ',' << seed << ',' << name << ',' << i + 1
                    << ',' << curve[i] << '\n';
            s.x.push_back(static_cast<double>(i + 1));
            s.y.push_back(curve[i]);
        }
        cum_series.push_back(std::move(s));
    };

    for (const auto &model : report.at("models")) {
        const auto label = model.at("label").get<std::string>();
        for (const auto &seed : model.at("seeds")) {
            if (!seed.at("ok").get<bool>()) {
                continue;
            }
            const auto sid = std::to_string(seed.at("seed").get<std::uint64_t>());
            Series ls{label + " s" + sid, {}, {}};
            for (const auto &h : seed.at("loss_history")) {
                const auto step = h.at(0).get<double>();
                const auto loss = h.at(1).get<double>();
                loss_csv << label << ',' << sid << ',' << h.at(0) << ','
                         << loss << '\n';
                ls.x.push_back(step);
                ls.y.push_back(loss);
            }
            loss_series.push_back(std::move(ls));
            for (const auto &asset : seed.at("assets")) {
                add_cumulative(label, sid, asset);
            }
            const auto &ent = seed.at("entropy");
            max_bits = ent.at("max_bits").get<double>();
            Series es{label + " s" + sid, {}, {}};
            const auto bits =
                ent.at("entropy_bits").get<std::vector<double>>();
            for (std::size_t t = 0; t < bits.size(); ++t) {
                ent_csv << label << ',' << sid << ',' << t + 1 << ','
                        << bits[t] << ',' << max_bits << '\n';
                es.x.push_back(static_cast<double>(t + 1));
                es.y.push_back(bits[t]);
            }
            ent_series.push_back(std::move(es));
        }
    }
    if (report.contains("baselines")) {
        for (const auto &b : report.at("baselines")) {
            for (const auto &asset : b.at("assets")) {
                add_cumulative(b.at("method").get<std::string>(), "", asset);
            }
        }
    }

    const auto dataset = report.value("dataset", std::string("report"));
    std::vector<std::filesystem::path> written{
        out_dir / "loss_curves.csv", out_dir / "cumulative_d1.csv",
        out_dir / "entropy.csv", out_dir / "loss_curves.svg",
        out_dir / "cumulative_d1.svg", out_dir / "entropy.svg"};
    write_text(written[0], loss_csv.str());
    write_text(written[1], cum_csv.str());
    write_text(written[2], ent_csv.str());
    write_text(written[3],
               svg_line_chart({dataset + ": training loss", "step",
                               "mean NLL (nats)"},
                              loss_series));
    write_text(written[4],
               svg_line_chart({dataset + ": cumulative Manhattan distance",
                               "step", "cumulative |x - y|"},
                              cum_series));
    ChartSpec ent_spec{dataset + ": entanglement entropy of asset 0", "t",
                       "entropy (bits)"};
    ent_spec.reference = max_bits;
    write_text(written[5], svg_line_chart(ent_spec, ent_series));
    return written;
}

} // namespace tqgm::plot
