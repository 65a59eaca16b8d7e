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

#include "shorsim/qft.hpp"

#include <cmath>
#include <numbers>

namespace shorsim {

namespace {

// Stage j of the circuit acts on register qubit
// L-1-j, so the first Hadamard hits the most significant bit.
template <typename NextDelta>
void run_circuit(StateVector& state, NextDelta&& next_delta) {
    const unsigned n = state.num_qubits();
    for (unsigned j = 0; j < n; ++j) {
        const unsigned target = n - 1 - j;
        apply_single_qubit(state, target, qft_hadamard(next_delta()));
        for (unsigned k = j + 1; k < n; ++k) {
            apply_controlled_phase(state, n - 1 - k, target,
                                   controlled_phase_gate(j, k, next_delta()));
        }
    }
    reverse_qubits(state);
}

std::size_t reverse_bits(std::size_t x, unsigned width) {
    std::size_t out = 0;
    for (unsigned b = 0; b < width; ++b) {
        out = (out << 1) | ((x >> b) & 1U);
    }
    return out;
}

} // namespace

void reverse_qubits(StateVector& state) {
    const unsigned n = state.num_qubits();
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const std::size_t j = reverse_bits(i, n);
        if (j > i) {
            std::swap(amps[i], amps[j]);
        }
    }
}

QftReport noisy_qft(const StateVector& state, const ErrorModel& model, RngStream& rng) {
    model.validate();
    QftReport report;
    report.num_qubits = state.num_qubits();
    report.model = model;
    report.deltas.reserve(qft_gate_count(state.num_qubits()));
    report.output = state;
    run_circuit(report.output, [&] {
        const double d = sample_gate_error(model, rng);
        report.deltas.push_back(d);
        return d;
    });
    return report;
}

StateVector replay_qft(const StateVector& state, std::span<const double> deltas) {
    if (deltas.size() != qft_gate_count(state.num_qubits())) {
        throw DomainError("transcript holds " + std::to_string(deltas.size()) +
                          " deltas, circuit has " +
                          std::to_string(qft_gate_count(state.num_qubits())) + " gates");
    }
    StateVector out = state;
    std::size_t next = 0;
    run_circuit(out, [&] { return deltas[next++]; });
    return out;
}

StateVector exact_dft(const StateVector& state) {
    if (state.num_qubits() > kMaxExactDftQubits) {
        throw ResourceError("exact_dft is limited to " + std::to_string(kMaxExactDftQubits) +
                            " qubits");
    }
    const std::size_t q = state.size();
    // Table of e^{2 pi i m / q}; the exponent a*c is reduced mod q exactly.
    std::vector<Complex> roots(q);
    for (std::size_t m = 0; m < q; ++m) {
        roots[m] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) /
                                       static_cast<double>(q));
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));
    StateVector out(state.num_qubits());
    const auto in = state.amplitudes();
    for (std::size_t c = 0; c < q; ++c) {
        Complex acc = 0.0;
        for (std::size_t a = 0; a < q; ++a) {
            acc += roots[(a * c) & (q - 1)] * in[a];
        }
        out[c] = acc * scale;
    }
    return out;
}

StateVector modeled_dft(const StateVector& state, std::span<const double> phase_errors,
                        std::span<const double> amp_errors) {
    const std::size_t q = state.size();
    if (phase_errors.size() != q || amp_errors.size() != q) {
        throw DomainError("modeled_dft error arrays must have length q = " + std::to_string(q));
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));
    const auto in = state.amplitudes();
    StateVector out(state.num_qubits());
    for (std::size_t c = 0; c < q; ++c) {
        Complex acc = 0.0;
        for (std::size_t a = 0; a < q; ++a) {
            if (in[a] == 0.0) {
                continue;
            }
            const double angle =
                2.0 * std::numbers::pi * static_cast<double>((a * c) & (q - 1)) /
                    static_cast<double>(q) +
                phase_errors[a] * static_cast<double>(a);
            acc += (1.0 + amp_errors[a]) * std::polar(1.0, angle) * in[a];
        }
        out[c] = acc * scale;
    }
    return out;
}

} // namespace shorsim
