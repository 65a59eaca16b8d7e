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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "shorsim/analytic.hpp"
#include "shorsim/core_state.hpp"
#include "shorsim/noisy_gates.hpp"
#include "shorsim/shor.hpp"

namespace shorsim {

inline constexpr const char* kToolVersion = "0.1.0";

struct IoError : std::runtime_error {
    IoError(const std::filesystem::path& path, const std::string& what);
    std::filesystem::path path;
};

/// One curve of (c, P_c) values, c = index into p.
struct Series {
    std::string name;
    std::vector<double> p;

    bool operator==(const Series&) const = default;
};

struct Dataset {
    std::vector<Series> series;
    nlohmann::json metadata = nlohmann::json::object();
};

/// Parameters for reproducing one of the four figures. Subfigure error
/// parameters are fixed per figure id (see figure_subfigures).
struct FigureSpec {
    int id = 1;
    std::uint64_t q = 128;
    std::uint64_t r = 4;
    std::uint64_t l = 0;
    // Realizations averaged per random subfigure.
    std::size_t trials = 1;
    std::uint64_t seed = 1;
    // Random subfigures via the gate-level circuit instead of per-term errors.
    bool gate_level = false;

    [[nodiscard]] PeriodicStateSpec periodic() const { return {q, r, l}; }
};

struct SubfigureCurve {
    std::string name;
    ErrorModel model;
};

/// The curves of figure `id`: 1 ideal; 2 systematic delta in {0.02, 0.03,
/// 0.05} plus an overlay of 0.1 and 0.33; 3 uniform s_max in {0.01, 0.03,
/// 0.05, 0.1}; 4 Gaussian sigma0 in {0.01, 0.03, 0.05} plus delta0 = 0.33
/// with sigma0 = 0.02. Throws DomainError for other ids.
std::vector<SubfigureCurve> figure_subfigures(int id);

Dataset run_figure(const FigureSpec& spec);

/// P_c for one realization of per-term phase errors drawn from `model`
/// (one draw per j; no amplitude errors).
std::vector<double> model_level_distribution(const PeriodicStateSpec& spec,
                                             const ErrorModel& model, RngStream& rng);

/// |amplitude|^2 after the gate-level noisy transform of the periodic state.
std::vector<double> gate_level_distribution(const PeriodicStateSpec& spec,
                                            const ErrorModel& model, RngStream& rng);

struct PeakReport {
    // Sorted by height, highest first.
    std::vector<std::pair<std::uint64_t, double>> peaks;
    std::vector<std::uint64_t> ideal;
    // Max over ideal positions of the circular distance to the nearest
    // detected peak; q when no peak was detected.
    std::uint64_t max_shift = 0;
    // Total variation distance to the zero-error distribution.
    double distortion = 0.0;
    // Signed offset of the highest point within +-q/(2r) of each ideal position.
    std::vector<std::int64_t> dominant_offsets;
};

/// Peaks are circular local maxima above mean + 3 stddev of the values.
/// The distribution is normalized before the distortion is computed.
PeakReport detect_peaks(const Distribution& dist, const PeriodicStateSpec& spec);

/// Elementwise median of equally sized distributions.
Distribution elementwise_median(const std::vector<Distribution>& dists);

struct ThresholdPoint {
    double magnitude = 0.0;
    SuccessEstimate estimate;
};

struct ThresholdReport {
    std::vector<ThresholdPoint> points;
    std::optional<double> threshold;
    double target = 0.25;
    std::uint64_t n = 0;
    std::uint64_t y = 0;
    ErrorMode mode = ErrorMode::None;
    std::uint64_t seed = 0;
    std::size_t trials = 0;

    /// Each step may rise by at most 2x the larger Wilson half-width.
    [[nodiscard]] bool non_increasing_within_ci() const;
};

/// Success probability at each grid magnitude (every point reuses `seed`).
/// The threshold is the largest magnitude whose success is >= target, or
/// none if the smallest already fails. Throws DomainError on an empty or
/// non-increasing grid.
ThresholdReport threshold_sweep(const ShorInstance& instance, ErrorMode mode,
                                const std::vector<double>& grid, std::size_t trials,
                                double target, std::uint64_t seed, double delta0 = 0.0);

/// "a:b:steps" (inclusive linear grid) or a comma separated list.
std::vector<double> parse_grid(const std::string& text);

// Serialization.

enum class DataFormat { Csv, Json };

/// CSV header `c,p,series`, LF line endings, shortest round-trip doubles.
std::string dataset_to_csv(const Dataset& dataset);
Dataset dataset_from_csv(const std::string& text);

/// {"metadata": {...}, "rows": [{"c", "p", "series"}, ...]}
nlohmann::json dataset_to_json(const Dataset& dataset);
Dataset dataset_from_json(const nlohmann::json& doc);

void emit_dataset(const Dataset& dataset, DataFormat format, const std::filesystem::path& path);

struct SvgOptions {
    int width = 720;
    int panel_height = 220;
    std::string title;
};

/// One stem panel per series, axes labelled c and P_c. Output depends only
/// on the inputs.
std::string render_svg(const Dataset& dataset, const SvgOptions& options = {});
void emit_svg(const Dataset& dataset, const std::filesystem::path& path,
              const SvgOptions& options = {});

nlohmann::json threshold_to_json(const ThresholdReport& report);
std::string threshold_to_csv(const ThresholdReport& report);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

} // namespace shorsim
