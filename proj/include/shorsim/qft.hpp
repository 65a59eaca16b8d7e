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

#include <span>
#include <vector>

#include "shorsim/core_state.hpp"
#include "shorsim/noisy_gates.hpp"

namespace shorsim {

/// Outcome of one gate-level Fourier transform.
struct QftReport {
    unsigned num_qubits = 0;
    ErrorModel model;
    // One drawn error per gate, in application order
    // A_0, B_01, ..., B_0(L-1), A_1, B_12, ..., A_(L-1).
    std::vector<double> deltas;
    StateVector output{1};
};

[[nodiscard]] constexpr std::size_t qft_gate_count(unsigned num_qubits) {
    return static_cast<std::size_t>(num_qubits) * (num_qubits + 1) / 2;
}

/// Runs the Hadamard / controlled-phase circuit with an independent error
/// deviate per gate, then reverses the qubit order so that output index c
/// has its ordinary integer meaning. With ErrorMode::None the result is
/// exact_dft(state) up to rounding.
QftReport noisy_qft(const StateVector& state, const ErrorModel& model, RngStream& rng);

/// Replays the circuit with a recorded transcript. Bit-identical to the
/// noisy_qft call that produced it.
StateVector replay_qft(const StateVector& state, std::span<const double> deltas);

/// Reverses the bit order of every basis index.
void reverse_qubits(StateVector& state);

/// Direct O(4^L) summation: out[c] = q^{-1/2} sum_a e^{2 pi i a c / q} in[a].
/// Limited to L <= 16.
StateVector exact_dft(const StateVector& state);

inline constexpr unsigned kMaxExactDftQubits = 16;

/// Error-modelled transform:
///
///   out[c] = q^{-1/2} sum_a (1 + amp_errors[a]) e^{i (2 pi c / q + phase_errors[a]) a} in[a]
///
/// The errors are indexed by input basis state. Amplitude errors make the map
/// non-unitary; the result is left unnormalized.
StateVector modeled_dft(const StateVector& state, std::span<const double> phase_errors,
                        std::span<const double> amp_errors);

} // namespace shorsim
