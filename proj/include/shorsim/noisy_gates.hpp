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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "shorsim/core_state.hpp"

namespace shorsim {

enum class ErrorMode { None, EM1, EM2Uniform, EM2Gauss, EM3Uniform, EM3Gauss };

/// CLI spelling: none, em1, em2u, em2g, em3u, em3g.
std::string_view to_string(ErrorMode mode);
std::optional<ErrorMode> parse_error_mode(std::string_view text);

[[nodiscard]] constexpr bool is_uniform(ErrorMode m) {
    return m == ErrorMode::EM2Uniform || m == ErrorMode::EM3Uniform;
}
[[nodiscard]] constexpr bool is_gaussian(ErrorMode m) {
    return m == ErrorMode::EM2Gauss || m == ErrorMode::EM3Gauss;
}
[[nodiscard]] constexpr bool has_systematic(ErrorMode m) {
    return m == ErrorMode::EM1 || m == ErrorMode::EM3Uniform || m == ErrorMode::EM3Gauss;
}

/// Gate error model: a systematic offset delta0 plus an optional random part
/// (uniform of half-width s_max, or Gaussian of width sigma0). All in radians.
struct ErrorModel {
    ErrorMode mode = ErrorMode::None;
    double delta0 = 0.0;
    double s_max = 0.0;
    double sigma0 = 0.0;
    std::uint64_t seed = 0;

    static ErrorModel none() { return {}; }
    static ErrorModel em1(double delta0);
    static ErrorModel em2_uniform(double s_max);
    static ErrorModel em2_gauss(double sigma0);
    static ErrorModel em3_uniform(double delta0, double s_max);
    static ErrorModel em3_gauss(double delta0, double sigma0);

    /// Builds the model for `mode` whose single error magnitude is `magnitude`
    /// (delta0 for EM1, s_max or sigma0 for EM2). EM3 takes delta0 as well.
    static ErrorModel with_magnitude(ErrorMode mode, double magnitude, double delta0 = 0.0);

    /// Throws DomainError on negative widths.
    void validate() const;

    /// delta0 as seen by the sampler: EM2 variants ignore it.
    [[nodiscard]] double effective_delta0() const noexcept;
};

/// One deviate per gate application.
double sample_gate_error(const ErrorModel& model, RngStream& rng);

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

struct SingleQubitGate {
    Matrix2 m{};

    [[nodiscard]] SingleQubitGate adjoint() const;
    [[nodiscard]] bool is_unitary(double tol = 1e-12) const;
};

SingleQubitGate operator*(const SingleQubitGate& a, const SingleQubitGate& b);

/// diag(1, 1, 1, e^{i phase}).
struct ControlledPhaseGate {
    double phase = 0.0;
};

/// Imperfect Walsh-Hadamard: a y-rotation through pi/2 + 2 delta,
///
///   (1/sqrt2) [[cos d - sin d, -(sin d + cos d)],
///              [sin d + cos d,   cos d - sin d ]].
///
/// Exact trigonometric form, valid for any delta. |delta| >= pi/4 is outside
/// the modelled range and triggers a one-time warning on stderr.
SingleQubitGate hadamard_gate(double delta);

/// Exact rotation exp(-i theta sigma_y / 2).
SingleQubitGate y_rotation(double theta);

/// hadamard_gate(delta) * Z. Reduces to the textbook Hadamard at delta = 0
/// and is the single-qubit gate used inside the Fourier circuit.
SingleQubitGate qft_hadamard(double delta);

/// B_jk with phase pi / 2^(k-j) + delta. Requires k > j.
ControlledPhaseGate controlled_phase_gate(unsigned j, unsigned k, double delta);

void apply_single_qubit(StateVector& state, unsigned qubit, const SingleQubitGate& gate);
void apply_controlled_phase(StateVector& state, unsigned control, unsigned target,
                            const ControlledPhaseGate& gate);

} // namespace shorsim
