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

#include "shorsim/noisy_gates.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <numbers>

namespace shorsim {

namespace {

constexpr std::array<std::pair<ErrorMode, std::string_view>, 6> kModeNames{{
    {ErrorMode::None, "none"},
    {ErrorMode::EM1, "em1"},
    {ErrorMode::EM2Uniform, "em2u"},
    {ErrorMode::EM2Gauss, "em2g"},
    {ErrorMode::EM3Uniform, "em3u"},
    {ErrorMode::EM3Gauss, "em3g"},
}};

void warn_out_of_range(double delta) {
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true)) {
        std::cerr << "warning: gate error " << delta
                  << " rad is outside the modelled range |delta| < pi/4\n";
    }
}

} // namespace

std::string_view to_string(ErrorMode mode) {
    for (const auto& [m, name] : kModeNames) {
        if (m == mode) {
            return name;
        }
    }
    return "unknown";
}

std::optional<ErrorMode> parse_error_mode(std::string_view text) {
    for (const auto& [m, name] : kModeNames) {
        if (name == text) {
            return m;
        }
    }
    return std::nullopt;
}

ErrorModel ErrorModel::em1(double delta0) {
    return {ErrorMode::EM1, delta0, 0.0, 0.0, 0};
}

ErrorModel ErrorModel::em2_uniform(double s_max) {
    ErrorModel m{ErrorMode::EM2Uniform, 0.0, s_max, 0.0, 0};
    m.validate();
    return m;
}

ErrorModel ErrorModel::em2_gauss(double sigma0) {
    ErrorModel m{ErrorMode::EM2Gauss, 0.0, 0.0, sigma0, 0};
    m.validate();
    return m;
}

ErrorModel ErrorModel::em3_uniform(double delta0, double s_max) {
    ErrorModel m{ErrorMode::EM3Uniform, delta0, s_max, 0.0, 0};
    m.validate();
    return m;
}

ErrorModel ErrorModel::em3_gauss(double delta0, double sigma0) {
    ErrorModel m{ErrorMode::EM3Gauss, delta0, 0.0, sigma0, 0};
    m.validate();
    return m;
}

ErrorModel ErrorModel::with_magnitude(ErrorMode mode, double magnitude, double delta0) {
    switch (mode) {
    case ErrorMode::None: return none();
    case ErrorMode::EM1: return em1(magnitude);
    case ErrorMode::EM2Uniform: return em2_uniform(magnitude);
    case ErrorMode::EM2Gauss: return em2_gauss(magnitude);
    case ErrorMode::EM3Uniform: return em3_uniform(delta0, magnitude);
    case ErrorMode::EM3Gauss: return em3_gauss(delta0, magnitude);
    }
    throw DomainError("unknown error mode");
}

void ErrorModel::validate() const {
    if (!(s_max >= 0.0)) {
        throw DomainError("s_max must be >= 0");
    }
    if (!(sigma0 >= 0.0)) {
        throw DomainError("sigma0 must be >= 0");
    }
}

double ErrorModel::effective_delta0() const noexcept {
    return has_systematic(mode) ? delta0 : 0.0;
}

double sample_gate_error(const ErrorModel& model, RngStream& rng) {
    const double base = model.effective_delta0();
    if (is_uniform(model.mode)) {
        const double magnitude = model.s_max * rng.uniform01();
        return rng.coin() ? base + magnitude : base - magnitude;
    }
    if (is_gaussian(model.mode)) {
        return base + model.sigma0 * rng.normal();
    }
    return base;
}

SingleQubitGate SingleQubitGate::adjoint() const {
    SingleQubitGate out;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            out.m[r][c] = std::conj(m[c][r]);
        }
    }
    return out;
}

SingleQubitGate operator*(const SingleQubitGate& a, const SingleQubitGate& b) {
    SingleQubitGate out;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            out.m[r][c] = a.m[r][0] * b.m[0][c] + a.m[r][1] * b.m[1][c];
        }
    }
    return out;
}

bool SingleQubitGate::is_unitary(double tol) const {
    const SingleQubitGate p = adjoint() * *this;
    return std::abs(p.m[0][0] - 1.0) <= tol && std::abs(p.m[1][1] - 1.0) <= tol &&
           std::abs(p.m[0][1]) <= tol && std::abs(p.m[1][0]) <= tol;
}

SingleQubitGate hadamard_gate(double delta) {
    if (std::abs(delta) >= std::numbers::pi / 4) {
        warn_out_of_range(delta);
    }
    const double c = std::cos(delta);
    const double s = std::sin(delta);
    const double k = 1.0 / std::numbers::sqrt2;
    SingleQubitGate g;
    g.m[0][0] = k * (c - s);
    g.m[0][1] = -k * (s + c);
    g.m[1][0] = k * (s + c);
    g.m[1][1] = k * (c - s);
    return g;
}

SingleQubitGate y_rotation(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    SingleQubitGate g;
    g.m[0][0] = c;
    g.m[0][1] = -s;
    g.m[1][0] = s;
    g.m[1][1] = c;
    return g;
}

SingleQubitGate qft_hadamard(double delta) {
    SingleQubitGate g = hadamard_gate(delta);
    g.m[0][1] = -g.m[0][1];
    g.m[1][1] = -g.m[1][1];
    return g;
}

ControlledPhaseGate controlled_phase_gate(unsigned j, unsigned k, double delta) {
    if (k <= j) {
        throw DomainError("controlled phase B_jk requires k > j");
    }
    if (k - j >= 1024) {
        return {delta};
    }
    return {std::numbers::pi / std::ldexp(1.0, static_cast<int>(k - j)) + delta};
}

void apply_single_qubit(StateVector& state, unsigned qubit, const SingleQubitGate& gate) {
    if (qubit >= state.num_qubits()) {
        throw DomainError("qubit " + std::to_string(qubit) + " out of range");
    }
    const std::size_t stride = std::size_t{1} << qubit;
    const std::size_t n = state.size();
    auto amps = state.amplitudes();
    const auto& m = gate.m;
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Complex a0 = amps[i];
            const Complex a1 = amps[i + stride];
            amps[i] = m[0][0] * a0 + m[0][1] * a1;
            amps[i + stride] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
}

void apply_controlled_phase(StateVector& state, unsigned control, unsigned target,
                            const ControlledPhaseGate& gate) {
    if (control >= state.num_qubits() || target >= state.num_qubits()) {
        throw DomainError("controlled phase qubit out of range");
    }
    if (control == target) {
        throw DomainError("controlled phase needs distinct control and target");
    }
    const std::size_t mask = (std::size_t{1} << control) | (std::size_t{1} << target);
    const Complex factor = std::polar(1.0, gate.phase);
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) == mask) {
            amps[i] *= factor;
        }
    }
}

} // namespace shorsim
