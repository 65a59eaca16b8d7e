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
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "shorsim/analytic.hpp"
#include "shorsim/core_state.hpp"
#include "shorsim/noisy_gates.hpp"

namespace shorsim {

/// Raised when gcd(y, N) != 1 (or N is even): the instance is solved
/// classically and `factor` is a nontrivial divisor of N.
struct LuckyFactor : std::runtime_error {
    LuckyFactor(std::uint64_t n, std::uint64_t f);
    std::uint64_t modulus;
    std::uint64_t factor;
};

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

/// Smallest r > 0 with y^r = 1 (mod N), by direct iteration.
/// Throws LuckyFactor when gcd(y, N) != 1.
std::uint64_t multiplicative_order(std::uint64_t y, std::uint64_t n);

struct ShorInstance {
    std::uint64_t n = 15;
    std::uint64_t y = 7;
    unsigned num_qubits = 8; // L = ceil(log2(N^2)), so N^2 <= q < 2 N^2
    std::uint64_t q = 256;
    std::uint64_t r = 4;

    /// Validates (N odd, not prime, 1 < y < N) and derives L, q and r.
    /// Throws LuckyFactor for even N or gcd(y, N) != 1, DomainError otherwise.
    static ShorInstance make(std::uint64_t n, std::uint64_t y);
};

/// One noisy imperfect Hadamard per qubit applied to |0...0>.
StateVector prepare_uniform_noisy(unsigned num_qubits, const ErrorModel& model, RngStream& rng);

/// Uniform superposition over {j r + l} with amplitude 1/sqrt(count).
StateVector post_measurement_state(const PeriodicStateSpec& spec);

/// sum_a amp_a |a>|y^a mod N>, stored per second-register value z as the
/// (sub-normalized) first-register amplitudes of the class {a : y^a = z}.
struct ModExpState {
    unsigned num_qubits = 0;
    std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, Complex>>> classes;

    /// Probability of reading z from the second register.
    [[nodiscard]] std::map<std::uint64_t, double> marginal() const;

    /// First register after reading z, renormalized.
    [[nodiscard]] StateVector collapse(std::uint64_t z) const;
};

ModExpState entangle_modexp(const StateVector& first, const ShorInstance& instance);

struct RecoveryOptions {
    // When set, candidates must satisfy base^d = 1 (mod N).
    std::optional<std::uint64_t> base;
    // Also try multiples m d, m = 1 .. min(ceil(N / d), boost_cap).
    bool boost = false;
    unsigned boost_cap = 64;
};

/// Continued-fraction recovery of the order from a measured c.
///
/// Expands c/q and takes, smallest first, the convergents h/d with d < N and
/// |c/q - h/d| <= 1/(2q). Without a base the first such d is returned; with a
/// base the first d (or boosted multiple) that verifies is returned.
std::optional<std::uint64_t> recover_period(std::uint64_t c, std::uint64_t q, std::uint64_t n,
                                            const RecoveryOptions& options = {});

struct TrialResult {
    std::uint64_t measured_l = 0; // smallest a in the measured class
    std::uint64_t measured_z = 0;
    std::uint64_t measured_c = 0;
    std::optional<std::uint64_t> recovered_r;
    bool success = false;
    std::uint64_t transcript_seed = 0;
    std::uint64_t stream_id = 0;
};

/// Prepare, entangle, measure the second register, run the gate-level noisy
/// Fourier transform, measure c and recover r. Recovery verifies candidates
/// against y but does not try multiples.
TrialResult simulate_full_run(const ShorInstance& instance, const ErrorModel& model,
                              RngStream& rng);

struct SuccessEstimate {
    std::size_t successes = 0;
    std::size_t trials = 0;
    double p = 0.0;
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] double half_width() const noexcept { return (hi - lo) / 2.0; }
};

/// Wilson score interval at normal quantile z (1.96 for 95%).
SuccessEstimate wilson_interval(std::size_t successes, std::size_t trials, double z = 1.96);

/// Runs `trials` independent trials; trial i uses RngStream(seed, i).
SuccessEstimate success_probability(const ShorInstance& instance, const ErrorModel& model,
                                    std::size_t trials, std::uint64_t seed);

/// As success_probability, also returning each trial.
std::vector<TrialResult> run_trials(const ShorInstance& instance, const ErrorModel& model,
                                    std::size_t trials, std::uint64_t seed);

} // namespace shorsim
