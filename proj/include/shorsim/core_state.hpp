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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace shorsim {

using Complex = std::complex<double>;

// Dense statevectors are capped at 2^24 amplitudes.
inline constexpr unsigned kMaxQubits = 24;

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegenerateStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Amplitudes over the 2^L computational basis states of an L-qubit register.
///
/// Index a is the integer value of the register; qubit 0 is the
/// least-significant bit of a.
class StateVector {
public:
    explicit StateVector(unsigned num_qubits);
    StateVector(unsigned num_qubits, std::vector<Complex> amplitudes);

    [[nodiscard]] unsigned num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amplitudes_.size(); }

    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amplitudes_; }

    Complex& operator[](std::size_t i) { return amplitudes_[i]; }
    const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

    [[nodiscard]] double norm_squared() const noexcept;

    /// Rescales to unit norm. Throws DegenerateStateError on the zero vector.
    void normalize();

private:
    unsigned num_qubits_;
    std::vector<Complex> amplitudes_;
};

StateVector new_basis_state(unsigned num_qubits, std::uint64_t index);

/// Probabilities (or relative probabilities) over output index c.
struct Distribution {
    std::vector<double> probs;
    // True when probs are unnormalized |amplitude|^2 values.
    bool relative = false;

    [[nodiscard]] double total() const noexcept;
};

/// probs[c] = |amplitude_c|^2. With normalize the result sums to 1;
/// otherwise `relative` reports whether the norm deviates from 1 by more
/// than 1e-9.
Distribution to_distribution(const StateVector& state, bool normalize);

/// Reproducible deviate stream.
///
/// The generator is std::mt19937_64 seeded through std::seed_seq with the
/// 32-bit words (seed_lo, seed_hi, stream_lo, stream_hi). Both are fully
/// specified by the C++ standard, so a (seed, stream_id) pair yields the same
/// raw sequence on every conforming platform. Real deviates are derived here
/// rather than through <random> distributions, whose algorithms are
/// implementation-defined.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t stream_id() const noexcept { return stream_id_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01();

    /// Fair coin.
    bool coin() { return (engine_() >> 63) != 0; }

    /// Standard normal via the Box-Muller transform (one value per call,
    /// the second of each pair is cached).
    double normal();

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Draws c with probability probs[c] / sum(probs).
std::size_t sample_index(const Distribution& dist, RngStream& rng);

} // namespace shorsim
