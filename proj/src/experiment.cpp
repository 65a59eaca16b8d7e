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

#include "shorsim/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "shorsim/parallel.hpp"
#include "shorsim/qft.hpp"

namespace shorsim {

namespace {

std::string curve_name(int fig, int sub, const std::string& params) {
    return std::to_string(fig) + "." + std::to_string(sub) + " " + params;
}

nlohmann::json model_json(const ErrorModel& m) {
    return {{"mode", std::string(to_string(m.mode))},
            {"delta0", m.delta0},
            {"s_max", m.s_max},
            {"sigma0", m.sigma0}};
}

std::uint64_t circular_distance(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    const std::uint64_t d = a > b ? a - b : b - a;
    return std::min(d, q - d);
}

double parse_number(const std::string& text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    while (first < last && *first == ' ') {
        ++first;
    }
    while (last > first && last[-1] == ' ') {
        --last;
    }
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw DomainError("not a number: '" + text + "'");
    }
    return value;
}

} // namespace

std::vector<SubfigureCurve> figure_subfigures(int id) {
    switch (id) {
    case 1:
        return {{curve_name(1, 1, "ideal"), ErrorModel::none()}};
    case 2:
        return {
            {curve_name(2, 1, "delta=0.02"), ErrorModel::em1(0.02)},
            {curve_name(2, 2, "delta=0.03"), ErrorModel::em1(0.03)},
            {curve_name(2, 3, "delta=0.05"), ErrorModel::em1(0.05)},
            {curve_name(2, 4, "delta=0.1"), ErrorModel::em1(0.1)},
            {curve_name(2, 4, "delta=0.33"), ErrorModel::em1(0.33)},
        };
    case 3:
        return {
            {curve_name(3, 1, "s_max=0.01"), ErrorModel::em2_uniform(0.01)},
            {curve_name(3, 2, "s_max=0.03"), ErrorModel::em2_uniform(0.03)},
            {curve_name(3, 3, "s_max=0.05"), ErrorModel::em2_uniform(0.05)},
            {curve_name(3, 4, "s_max=0.1"), ErrorModel::em2_uniform(0.1)},
        };
    case 4:
        return {
            {curve_name(4, 1, "sigma0=0.01"), ErrorModel::em2_gauss(0.01)},
            {curve_name(4, 2, "sigma0=0.03"), ErrorModel::em2_gauss(0.03)},
            {curve_name(4, 3, "sigma0=0.05"), ErrorModel::em2_gauss(0.05)},
            {curve_name(4, 4, "delta0=0.33 sigma0=0.02"), ErrorModel::em3_gauss(0.33, 0.02)},
        };
    default:
        throw DomainError("unknown figure id " + std::to_string(id) + " (expected 1-4)");
    }
}

std::vector<double> model_level_distribution(const PeriodicStateSpec& spec,
                                             const ErrorModel& model, RngStream& rng) {
    const std::uint64_t n = spec.count();
    std::vector<double> phase(n);
    for (auto& p : phase) {
        p = sample_gate_error(model, rng);
    }
    const std::vector<double> amp(n, 0.0);
    return pc_double_sum_all(spec, amp, phase);
}

std::vector<double> gate_level_distribution(const PeriodicStateSpec& spec,
                                            const ErrorModel& model, RngStream& rng) {
    const QftReport report = noisy_qft(post_measurement_state(spec), model, rng);
    return to_distribution(report.output, false).probs;
}

Dataset run_figure(const FigureSpec& spec) {
    const PeriodicStateSpec periodic = spec.periodic();
    periodic.validate();
    if (spec.trials == 0) {
        throw DomainError("trials per subfigure must be >= 1");
    }
    const auto curves = figure_subfigures(spec.id);
    const bool random_figure = spec.id == 3 || spec.id == 4;

    Dataset out;
    out.metadata = {
        {"tool", "shorsim"},
        {"version", kToolVersion},
        {"figure", spec.id},
        {"q", spec.q},
        {"r", spec.r},
        {"l", spec.l},
        {"seed", spec.seed},
        {"trials", spec.trials},
        {"level", random_figure && spec.gate_level ? "gate" : "model"},
        {"relative", true},
    };
    if (spec.id == 4) {
        out.metadata["notes"] = "tau in the subfigure parameters is read as the Gaussian width sigma0";
    }
    nlohmann::json series_meta = nlohmann::json::array();

    for (std::size_t i = 0; i < curves.size(); ++i) {
        const auto& curve = curves[i];
        Series s{curve.name, {}};
        nlohmann::json meta = model_json(curve.model);
        meta["name"] = curve.name;
        if (spec.id == 1) {
            const std::vector<double> zero(periodic.count(), 0.0);
            s.p = pc_double_sum_all(periodic, zero, zero);
        } else if (spec.id == 2) {
            s.p = pc_systematic_all(periodic, curve.model.delta0);
        } else {
            RngStream rng(spec.seed, i);
            meta["stream_id"] = i;
            s.p.assign(periodic.q, 0.0);
            for (std::size_t t = 0; t < spec.trials; ++t) {
                const auto one = spec.gate_level ? gate_level_distribution(periodic, curve.model, rng)
                                                 : model_level_distribution(periodic, curve.model, rng);
                for (std::size_t c = 0; c < one.size(); ++c) {
                    s.p[c] += one[c];
                }
            }
            for (auto& v : s.p) {
                v /= static_cast<double>(spec.trials);
            }
        }
        series_meta.push_back(std::move(meta));
        out.series.push_back(std::move(s));
    }
    out.metadata["series"] = std::move(series_meta);
    return out;
}

PeakReport detect_peaks(const Distribution& dist, const PeriodicStateSpec& spec) {
    spec.validate();
    const std::size_t q = dist.probs.size();
    if (q != spec.q) {
        throw DomainError("distribution length does not match q");
    }
    const auto& p = dist.probs;
    PeakReport report;

    const double mean = std::accumulate(p.begin(), p.end(), 0.0) / static_cast<double>(q);
    double var = 0.0;
    for (double v : p) {
        var += (v - mean) * (v - mean);
    }
    const double threshold = mean + 3.0 * std::sqrt(var / static_cast<double>(q));
    for (std::size_t c = 0; c < q; ++c) {
        const double left = p[(c + q - 1) % q];
        const double right = p[(c + 1) % q];
        if (p[c] > threshold && p[c] >= left && p[c] >= right) {
            report.peaks.emplace_back(c, p[c]);
        }
    }
    std::stable_sort(report.peaks.begin(), report.peaks.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });

    for (std::uint64_t k = 0; k < spec.r; ++k) {
        const auto pos = static_cast<std::uint64_t>(
            std::llround(static_cast<double>(k) * static_cast<double>(q) / static_cast<double>(spec.r)));
        report.ideal.push_back(pos % q);
    }

    report.max_shift = report.peaks.empty() ? q : 0;
    if (!report.peaks.empty()) {
        for (const auto ideal : report.ideal) {
            std::uint64_t nearest = q;
            for (const auto& [c, h] : report.peaks) {
                nearest = std::min(nearest, circular_distance(c, ideal, q));
            }
            report.max_shift = std::max(report.max_shift, nearest);
        }
    }

    const auto half_window = static_cast<std::int64_t>(q / (2 * spec.r));
    for (const auto ideal : report.ideal) {
        std::int64_t best_offset = 0;
        double best = -1.0;
        for (std::int64_t d = -half_window + 1; d <= half_window; ++d) {
            const auto idx = static_cast<std::size_t>(
                (static_cast<std::int64_t>(ideal) + d + static_cast<std::int64_t>(q)) %
                static_cast<std::int64_t>(q));
            // Ties go to the offset closest to the ideal position.
            if (p[idx] > best || (p[idx] == best && std::abs(d) < std::abs(best_offset))) {
                best = p[idx];
                best_offset = d;
            }
        }
        report.dominant_offsets.push_back(best_offset);
    }

    const double total = dist.total();
    if (total > 0.0) {
        const auto ideal_dist = pc_systematic_all(spec, 0.0);
        double tv = 0.0;
        for (std::size_t c = 0; c < q; ++c) {
            tv += std::abs(p[c] / total - ideal_dist[c]);
        }
        report.distortion = tv / 2.0;
    }
    return report;
}

Distribution elementwise_median(const std::vector<Distribution>& dists) {
    if (dists.empty()) {
        throw DomainError("median of zero distributions");
    }
    const std::size_t q = dists.front().probs.size();
    Distribution out;
    out.probs.resize(q);
    std::vector<double> column(dists.size());
    for (std::size_t c = 0; c < q; ++c) {
        for (std::size_t i = 0; i < dists.size(); ++i) {
            if (dists[i].probs.size() != q) {
                throw DomainError("median needs equally sized distributions");
            }
            column[i] = dists[i].probs[c];
        }
        std::sort(column.begin(), column.end());
        const std::size_t mid = column.size() / 2;
        out.probs[c] = column.size() % 2 == 1 ? column[mid] : (column[mid - 1] + column[mid]) / 2.0;
    }
    out.relative = std::abs(out.total() - 1.0) > 1e-9;
    return out;
}

bool ThresholdReport::non_increasing_within_ci() const {
    for (std::size_t i = 1; i < points.size(); ++i) {
        const auto& prev = points[i - 1].estimate;
        const auto& cur = points[i].estimate;
        const double allowance = 2.0 * std::max(prev.half_width(), cur.half_width());
        if (cur.p - prev.p > allowance) {
            return false;
        }
    }
    return true;
}

ThresholdReport threshold_sweep(const ShorInstance& instance, ErrorMode mode,
                                const std::vector<double>& grid, std::size_t trials,
                                double target, std::uint64_t seed, double delta0) {
    if (grid.empty()) {
        throw DomainError("threshold grid is empty");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw DomainError("threshold grid must be strictly increasing");
        }
    }
    ThresholdReport report;
    report.target = target;
    report.n = instance.n;
    report.y = instance.y;
    report.mode = mode;
    report.seed = seed;
    report.trials = trials;
    for (const double magnitude : grid) {
        const ErrorModel model = ErrorModel::with_magnitude(mode, magnitude, delta0);
        report.points.push_back({magnitude, success_probability(instance, model, trials, seed)});
    }
    // Largest magnitude such that it and every smaller grid point reach the target.
    for (const auto& point : report.points) {
        if (point.estimate.p < target) {
            break;
        }
        report.threshold = point.magnitude;
    }
    return report;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':')) {
            parts.push_back(item);
        }
        if (parts.size() != 3) {
            throw DomainError("grid must look like a:b:steps");
        }
        const double a = parse_number(parts[0]);
        const double b = parse_number(parts[1]);
        const double steps = parse_number(parts[2]);
        if (steps < 1 || steps != std::floor(steps)) {
            throw DomainError("grid steps must be a positive integer");
        }
        const auto n = static_cast<std::size_t>(steps);
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
        }
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            out.push_back(parse_number(item));
        }
    }
    if (out.empty()) {
        throw DomainError("grid is empty");
    }
    return out;
}

} // namespace shorsim
