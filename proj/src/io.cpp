// Copyright 2026 The shorsim Authors
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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "shorsim/experiment.hpp"

namespace shorsim {

namespace {

std::string fixed(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

// Axis maximum rounded up to 1, 2 or 5 times a power of ten.
double nice_ceiling(double v) {
    if (!(v > 0.0)) {
        return 1.0;
    }
    const double exponent = std::floor(std::log10(v));
    const double base = std::pow(10.0, exponent);
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (v <= m * base * (1.0 + 1e-12)) {
            return m * base;
        }
    }
    return 10.0 * base;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

} // namespace

IoError::IoError(const std::filesystem::path& p, const std::string& what)
    : std::runtime_error(what + ": " + p.string()), path(p) {}

std::string format_double(double value) {
    if (!std::isfinite(value)) {
        throw DomainError("cannot serialize non-finite value");
    }
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string dataset_to_csv(const Dataset& dataset) {
    std::string out = "c,p,series\n";
    for (const auto& s : dataset.series) {
        if (s.name.find_first_of(",\n\r") != std::string::npos) {
            throw DomainError("series name may not contain commas or newlines: " + s.name);
        }
        for (std::size_t c = 0; c < s.p.size(); ++c) {
            out += std::to_string(c);
            out += ',';
            out += format_double(s.p[c]);
            out += ',';
            out += s.name;
            out += '\n';
        }
    }
    return out;
}

Dataset dataset_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "c,p,series") {
        throw DomainError("CSV must start with the header c,p,series");
    }
    Dataset out;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto first = line.find(',');
        const auto second = line.find(',', first + 1);
        if (first == std::string::npos || second == std::string::npos) {
            throw DomainError("malformed CSV row: " + line);
        }
        std::size_t c = 0;
        double p = 0.0;
        const char* b = line.data();
        if (std::from_chars(b, b + first, c).ptr != b + first ||
            std::from_chars(b + first + 1, b + second, p).ptr != b + second) {
            throw DomainError("malformed CSV row: " + line);
        }
        const std::string name = line.substr(second + 1);
        auto it = std::find_if(out.series.begin(), out.series.end(),
                               [&](const Series& s) { return s.name == name; });
        if (it == out.series.end()) {
            out.series.push_back({name, {}});
            it = std::prev(out.series.end());
        }
        if (c != it->p.size()) {
            throw DomainError("CSV rows for series '" + name + "' are not consecutive");
        }
        it->p.push_back(p);
    }
    return out;
}

nlohmann::json dataset_to_json(const Dataset& dataset) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& s : dataset.series) {
        for (std::size_t c = 0; c < s.p.size(); ++c) {
            rows.push_back({{"c", c}, {"p", s.p[c]}, {"series", s.name}});
        }
    }
    return {{"metadata", dataset.metadata}, {"rows", std::move(rows)}};
}

Dataset dataset_from_json(const nlohmann::json& doc) {
    Dataset out;
    out.metadata = doc.value("metadata", nlohmann::json::object());
    for (const auto& row : doc.at("rows")) {
        const auto name = row.at("series").get<std::string>();
        const auto c = row.at("c").get<std::size_t>();
        auto it = std::find_if(out.series.begin(), out.series.end(),
                               [&](const Series& s) { return s.name == name; });
        if (it == out.series.end()) {
            out.series.push_back({name, {}});
            it = std::prev(out.series.end());
        }
        if (c != it->p.size()) {
            throw DomainError("JSON rows for series '" + name + "' are not consecutive");
        }
        it->p.push_back(row.at("p").get<double>());
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(path, "cannot open for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
        throw IoError(path, "write failed");
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path, "cannot open for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit_dataset(const Dataset& dataset, DataFormat format, const std::filesystem::path& path) {
    if (format == DataFormat::Csv) {
        write_text_file(path, dataset_to_csv(dataset));
    } else {
        write_text_file(path, dataset_to_json(dataset).dump(2) + "\n");
    }
}

std::string render_svg(const Dataset& dataset, const SvgOptions& options) {
    constexpr double left = 70, right = 20, top = 30, bottom = 45;
    const std::size_t panels = std::max<std::size_t>(dataset.series.size(), 1);
    const double width = options.width;
    const double panel_h = options.panel_height;
    const double height = top + static_cast<double>(panels) * panel_h;
    const double plot_w = width - left - right;
    const double plot_h = panel_h - bottom - 10;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
        << fixed(height, 0) << "\" viewBox=\"0 0 " << options.width << ' ' << fixed(height, 0)
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!options.title.empty()) {
        svg << "<text x=\"" << fixed(width / 2) << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">"
            << escape_xml(options.title) << "</text>\n";
    }

    for (std::size_t i = 0; i < panels; ++i) {
        const Series* s = i < dataset.series.size() ? &dataset.series[i] : nullptr;
        const double y0 = top + static_cast<double>(i) * panel_h;
        const double base_y = y0 + plot_h;
        const std::size_t count = s ? s->p.size() : 0;
        const double x_span = count > 1 ? static_cast<double>(count - 1) : 1.0;
        double peak = 0.0;
        if (s) {
            for (double v : s->p) {
                peak = std::max(peak, v);
            }
        }
        const double y_max = nice_ceiling(peak);
        const auto x_of = [&](std::size_t c) { return left + plot_w * static_cast<double>(c) / x_span; };
        const auto y_of = [&](double v) { return base_y - plot_h * v / y_max; };

        svg << "<g class=\"panel\">\n";
        svg << "<line class=\"axis\" x1=\"" << fixed(left) << "\" y1=\"" << fixed(base_y) << "\" x2=\""
            << fixed(left + plot_w) << "\" y2=\"" << fixed(base_y) << "\" stroke=\"black\"/>\n";
        svg << "<line class=\"axis\" x1=\"" << fixed(left) << "\" y1=\"" << fixed(y0) << "\" x2=\""
            << fixed(left) << "\" y2=\"" << fixed(base_y) << "\" stroke=\"black\"/>\n";
        for (int t = 0; t <= 4; ++t) {
            const double frac = t / 4.0;
            const double tx = left + plot_w * frac;
            const double label = x_span * frac;
            svg << "<line x1=\"" << fixed(tx) << "\" y1=\"" << fixed(base_y) << "\" x2=\"" << fixed(tx)
                << "\" y2=\"" << fixed(base_y + 4) << "\" stroke=\"black\"/>\n";
            svg << "<text x=\"" << fixed(tx) << "\" y=\"" << fixed(base_y + 16)
                << "\" text-anchor=\"middle\">" << fixed(label, 0) << "</text>\n";
            const double ty = base_y - plot_h * frac;
            svg << "<text x=\"" << fixed(left - 6) << "\" y=\"" << fixed(ty + 4)
                << "\" text-anchor=\"end\">" << fixed(y_max * frac, 4) << "</text>\n";
        }
        svg << "<text x=\"" << fixed(left + plot_w / 2) << "\" y=\"" << fixed(base_y + 32)
            << "\" text-anchor=\"middle\">c</text>\n";
        svg << "<text x=\"16\" y=\"" << fixed(y0 + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
            << fixed(y0 + plot_h / 2) << ")\">P_c</text>\n";
        if (s) {
            const char* colour = kPalette[i % std::size(kPalette)];
            svg << "<text x=\"" << fixed(left + plot_w) << "\" y=\"" << fixed(y0 + 10)
                << "\" text-anchor=\"end\">" << escape_xml(s->name) << "</text>\n";
            for (std::size_t c = 0; c < count; ++c) {
                // Stems shorter than 0.01 px are not drawn.
                if (plot_h * s->p[c] / y_max < 0.01) {
                    continue;
                }
                svg << "<line class=\"stem\" x1=\"" << fixed(x_of(c)) << "\" y1=\"" << fixed(base_y)
                    << "\" x2=\"" << fixed(x_of(c)) << "\" y2=\"" << fixed(y_of(s->p[c]))
                    << "\" stroke=\"" << colour << "\"/>\n";
                svg << "<circle cx=\"" << fixed(x_of(c)) << "\" cy=\"" << fixed(y_of(s->p[c]))
                    << "\" r=\"1.5\" fill=\"" << colour << "\"/>\n";
            }
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_svg(const Dataset& dataset, const std::filesystem::path& path, const SvgOptions& options) {
    write_text_file(path, render_svg(dataset, options));
}

nlohmann::json threshold_to_json(const ThresholdReport& report) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& pt : report.points) {
        points.push_back({{"magnitude", pt.magnitude},
                          {"successes", pt.estimate.successes},
                          {"trials", pt.estimate.trials},
                          {"p", pt.estimate.p},
                          {"lo", pt.estimate.lo},
                          {"hi", pt.estimate.hi}});
    }
    return {{"metadata",
             {{"tool", "shorsim"},
              {"version", kToolVersion},
              {"n", report.n},
              {"y", report.y},
              {"mode", std::string(to_string(report.mode))},
              {"seed", report.seed},
              {"trials", report.trials},
              {"target", report.target}}},
            {"threshold", report.threshold ? nlohmann::json(*report.threshold) : nlohmann::json()},
            {"points", std::move(points)}};
}

std::string threshold_to_csv(const ThresholdReport& report) {
    std::string out = "magnitude,successes,trials,p,lo,hi\n";
    for (const auto& pt : report.points) {
        out += format_double(pt.magnitude) + ',' + std::to_string(pt.estimate.successes) + ',' +
               std::to_string(pt.estimate.trials) + ',' + format_double(pt.estimate.p) + ',' +
               format_double(pt.estimate.lo) + ',' + format_double(pt.estimate.hi) + '\n';
    }
    return out;
}

} // namespace shorsim
