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

#include "shorsim/core_state.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace shorsim {

namespace {

std::size_t checked_dimension(unsigned num_qubits) {
    if (num_qubits < 1) {
        throw DomainError("statevector needs at least one qubit");
    }
    if (num_qubits > kMaxQubits) {
        throw ResourceError("statevector limited to " + std::to_string(kMaxQubits) +
                            " qubits, got " + std::to_string(num_qubits));
    }
    return std::size_t{1} << num_qubits;
}

} // namespace

StateVector::StateVector(unsigned num_qubits)
    : num_qubits_(num_qubits), amplitudes_(checked_dimension(num_qubits)) {}

StateVector::StateVector(unsigned num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != checked_dimension(num_qubits)) {
        throw DomainError("amplitude count " + std::to_string(amplitudes_.size()) +
                          " does not match 2^" + std::to_string(num_qubits));
    }
}

double StateVector::norm_squared() const noexcept {
    double acc = 0.0;
    for (const auto& a : amplitudes_) {
        acc += std::norm(a);
    }
    return acc;
}

void StateVector::normalize() {
    const double n2 = norm_squared();
    if (!(n2 > 0.0)) {
        throw DegenerateStateError("cannot normalize the zero state");
    }
    const double scale = 1.0 / std::sqrt(n2);
    for (auto& a : amplitudes_) {
        a *= scale;
    }
}

StateVector new_basis_state(unsigned num_qubits, std::uint64_t index) {
    StateVector state(num_qubits);
    if (index >= state.size()) {
        throw DomainError("basis index " + std::to_string(index) + " out of range for " +
                          std::to_string(num_qubits) + " qubits");
    }
    state[index] = 1.0;
    return state;
}

double Distribution::total() const noexcept {
    return std::accumulate(probs.begin(), probs.end(), 0.0);
}

Distribution to_distribution(const StateVector& state, bool normalize) {
    Distribution dist;
    dist.probs.reserve(state.size());
    for (const auto& a : state.amplitudes()) {
        dist.probs.push_back(std::norm(a));
    }
    const double sum = dist.total();
    if (normalize) {
        if (!(sum > 0.0)) {
            throw DegenerateStateError("cannot normalize a distribution of the zero state");
        }
        for (auto& p : dist.probs) {
            p /= sum;
        }
        dist.relative = false;
    } else {
        dist.relative = std::abs(sum - 1.0) > 1e-9;
    }
    return dist;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
}

double RngStream::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // 1 - u keeps the logarithm argument in (0, 1].
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

std::size_t sample_index(const Distribution& dist, RngStream& rng) {
    const double sum = dist.total();
    if (!(sum > 0.0)) {
        throw DegenerateStateError("cannot sample from a zero-sum distribution");
    }
    const double target = rng.uniform01() * sum;
    double acc = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < dist.probs.size(); ++i) {
        if (dist.probs[i] <= 0.0) {
            continue;
        }
        acc += dist.probs[i];
        last_nonzero = i;
        if (target < acc) {
            return i;
        }
    }
    // Rounding can leave target just above the accumulated sum.
    return last_nonzero;
}

} // namespace shorsim
