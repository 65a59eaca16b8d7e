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

#include "shorsim/shor.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "shorsim/parallel.hpp"
#include "shorsim/qft.hpp"

namespace shorsim {

namespace {

bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

} // namespace

LuckyFactor::LuckyFactor(std::uint64_t n, std::uint64_t f)
    : std::runtime_error("degenerate instance: " + std::to_string(f) + " divides " +
                         std::to_string(n)),
      modulus(n), factor(f) {}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    if (mod == 1) {
        return 0;
    }
    std::uint64_t result = 1;
    base %= mod;
    while (exp > 0) {
        if (exp & 1U) {
            result = mulmod(result, base, mod);
        }
        base = mulmod(base, base, mod);
        exp >>= 1;
    }
    return result;
}

std::uint64_t multiplicative_order(std::uint64_t y, std::uint64_t n) {
    if (n < 2) {
        throw DomainError("modulus must be >= 2");
    }
    const std::uint64_t g = std::gcd(y, n);
    if (g != 1) {
        throw LuckyFactor(n, g);
    }
    std::uint64_t value = y % n;
    std::uint64_t r = 1;
    while (value != 1) {
        value = mulmod(value, y, n);
        ++r;
    }
    return r;
}

ShorInstance ShorInstance::make(std::uint64_t n, std::uint64_t y) {
    if (n < 3) {
        throw DomainError("N must be >= 3");
    }
    if (n % 2 == 0) {
        throw LuckyFactor(n, 2);
    }
    if (is_prime(n)) {
        throw DomainError("N = " + std::to_string(n) + " is prime");
    }
    if (y <= 1 || y >= n) {
        throw DomainError("base y must satisfy 1 < y < N");
    }
    const unsigned __int128 n2 = static_cast<unsigned __int128>(n) * n;
    unsigned width = 0;
    while ((n2 - 1) >> width != 0) {
        ++width;
    }
    if (width > kMaxQubits) {
        throw ResourceError("N = " + std::to_string(n) + " needs more than " +
                            std::to_string(kMaxQubits) + " qubits");
    }
    ShorInstance inst;
    inst.n = n;
    inst.y = y;
    inst.r = multiplicative_order(y, n);
    inst.num_qubits = width;
    inst.q = std::uint64_t{1} << inst.num_qubits;
    return inst;
}

StateVector prepare_uniform_noisy(unsigned num_qubits, const ErrorModel& model, RngStream& rng) {
    model.validate();
    StateVector state = new_basis_state(num_qubits, 0);
    for (unsigned k = 0; k < num_qubits; ++k) {
        apply_single_qubit(state, k, hadamard_gate(sample_gate_error(model, rng)));
    }
    return state;
}

StateVector post_measurement_state(const PeriodicStateSpec& spec) {
    spec.validate();
    StateVector state(spec.num_qubits());
    const double amp = 1.0 / std::sqrt(static_cast<double>(spec.count()));
    for (std::uint64_t a = spec.l; a < spec.q; a += spec.r) {
        state[a] = amp;
    }
    return state;
}

std::map<std::uint64_t, double> ModExpState::marginal() const {
    std::map<std::uint64_t, double> out;
    for (const auto& [z, members] : classes) {
        double p = 0.0;
        for (const auto& [a, amp] : members) {
            p += std::norm(amp);
        }
        out[z] = p;
    }
    return out;
}

StateVector ModExpState::collapse(std::uint64_t z) const {
    const auto it = classes.find(z);
    if (it == classes.end()) {
        throw DomainError("second-register value " + std::to_string(z) + " has no support");
    }
    StateVector state(num_qubits);
    for (const auto& [a, amp] : it->second) {
        state[a] = amp;
    }
    state.normalize();
    return state;
}

ModExpState entangle_modexp(const StateVector& first, const ShorInstance& instance) {
    ModExpState out;
    out.num_qubits = first.num_qubits();
    std::uint64_t z = 1 % instance.n;
    for (std::uint64_t a = 0; a < first.size(); ++a) {
        out.classes[z].emplace_back(a, first[a]);
        z = mulmod(z, instance.y, instance.n);
    }
    return out;
}

std::optional<std::uint64_t> recover_period(std::uint64_t c, std::uint64_t q, std::uint64_t n,
                                            const RecoveryOptions& options) {
    if (c >= q) {
        throw DomainError("measured c must be < q");
    }
    if (c == 0) {
        return std::nullopt;
    }
    const auto verifies = [&](std::uint64_t d) {
        return !options.base || mod_pow(*options.base, d, n) == 1;
    };

    // Convergents h/k of c/q via the standard recurrences.
    std::uint64_t num = c;
    std::uint64_t den = q;
    std::uint64_t h_prev = 0, h = 1;
    std::uint64_t k_prev = 1, k = 0;
    while (den != 0) {
        const std::uint64_t a = num / den;
        const std::uint64_t rem = num % den;
        num = den;
        den = rem;
        const std::uint64_t h_next = a * h + h_prev;
        const std::uint64_t k_next = a * k + k_prev;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
        if (k >= n) {
            break;
        }
        // |c/q - h/k| <= 1/(2q)  <=>  2 |c k - h q| <= k
        const auto ck = static_cast<__int128>(c) * k;
        const auto hq = static_cast<__int128>(h) * q;
        const auto gap = ck > hq ? ck - hq : hq - ck;
        if (2 * gap > static_cast<__int128>(k)) {
            continue;
        }
        if (!options.base) {
            return k;
        }
        if (verifies(k)) {
            return k;
        }
        if (options.boost) {
            const std::uint64_t limit =
                std::min<std::uint64_t>((n + k - 1) / k, options.boost_cap);
            for (std::uint64_t m = 2; m <= limit && m * k <= n; ++m) {
                if (verifies(m * k)) {
                    return m * k;
                }
            }
        }
    }
    return std::nullopt;
}

TrialResult simulate_full_run(const ShorInstance& instance, const ErrorModel& model,
                              RngStream& rng) {
    TrialResult result;
    result.transcript_seed = rng.seed();
    result.stream_id = rng.stream_id();

    const StateVector first = prepare_uniform_noisy(instance.num_qubits, model, rng);
    const ModExpState joint = entangle_modexp(first, instance);

    // The marginal is no longer uniform over classes once prep errors skew
    // the first-register amplitudes.
    const auto marginal = joint.marginal();
    std::vector<std::uint64_t> values;
    Distribution z_dist;
    for (const auto& [z, p] : marginal) {
        values.push_back(z);
        z_dist.probs.push_back(p);
    }
    result.measured_z = values[sample_index(z_dist, rng)];
    result.measured_l = joint.classes.at(result.measured_z).front().first;

    const QftReport qft = noisy_qft(joint.collapse(result.measured_z), model, rng);
    result.measured_c = sample_index(to_distribution(qft.output, true), rng);

    RecoveryOptions options;
    options.base = instance.y;
    result.recovered_r = recover_period(result.measured_c, instance.q, instance.n, options);
    result.success = result.recovered_r && *result.recovered_r == instance.r;
    return result;
}

SuccessEstimate wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) {
        throw DomainError("wilson interval needs at least one trial");
    }
    SuccessEstimate est;
    est.successes = successes;
    est.trials = trials;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double spread = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    est.p = p;
    est.lo = std::max(0.0, centre - spread);
    est.hi = std::min(1.0, centre + spread);
    return est;
}

std::vector<TrialResult> run_trials(const ShorInstance& instance, const ErrorModel& model,
                                    std::size_t trials, std::uint64_t seed) {
    model.validate();
    return parallel_map(trials, [&](std::size_t i) {
        RngStream rng(seed, i);
        return simulate_full_run(instance, model, rng);
    });
}

SuccessEstimate success_probability(const ShorInstance& instance, const ErrorModel& model,
                                    std::size_t trials, std::uint64_t seed) {
    if (trials == 0) {
        throw DomainError("success_probability needs trials >= 1");
    }
    std::size_t successes = 0;
    for (const auto& t : run_trials(instance, model, trials, seed)) {
        successes += t.success ? 1 : 0;
    }
    return wilson_interval(successes, trials);
}

} // namespace shorsim
