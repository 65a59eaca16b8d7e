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

#include "shorsim/analytic.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace shorsim {

namespace {

constexpr double kSingularSin = 1e-9;

// (a * b) mod m without overflow for 64-bit operands.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

// pi * (k mod 2q) / q: an exact reduction of pi k / q into [0, 2 pi).
double pi_multiple(std::uint64_t k, std::uint64_t q) {
    return std::numbers::pi * static_cast<double>(k % (2 * q)) / static_cast<double>(q);
}

// 2 pi (k mod q) / q.
double two_pi_fraction(std::uint64_t k, std::uint64_t q) {
    return 2.0 * std::numbers::pi * static_cast<double>(k % q) / static_cast<double>(q);
}

// sin(pi k / q + eps), reduced around the nearest multiple of pi so that
// small eps keeps full relative precision.
double sin_pi_plus(std::uint64_t k, std::uint64_t q, double eps) {
    const std::uint64_t m = k % (2 * q);
    const double sign = m >= q ? -1.0 : 1.0;
    const std::uint64_t rem = m % q;
    if (2 * rem > q) {
        return sign * std::sin(std::numbers::pi * static_cast<double>(q - rem) / static_cast<double>(q) - eps);
    }
    return sign * std::sin(std::numbers::pi * static_cast<double>(rem) / static_cast<double>(q) + eps);
}

// sin(pi c r / q + delta r / 2), the half-angle of the geometric ratio.
double sin_half_angle(std::uint64_t c, const PeriodicStateSpec& spec, double delta) {
    return sin_pi_plus(mulmod(c, spec.r, 2 * spec.q), spec.q, delta * static_cast<double>(spec.r) / 2.0);
}

} // namespace

void PeriodicStateSpec::validate() const {
    if (q < 2 || !std::has_single_bit(q)) {
        throw DomainError("q must be a power of two >= 2, got " + std::to_string(q));
    }
    if (r == 0 || r >= q) {
        throw DomainError("period r must satisfy 0 < r < q");
    }
    if (l >= r) {
        throw DomainError("offset l must satisfy 0 <= l < r");
    }
}

unsigned PeriodicStateSpec::num_qubits() const noexcept {
    return static_cast<unsigned>(std::countr_zero(q));
}

double prep_amplitude_error(std::uint64_t a, double delta, unsigned n) {
    const int s = std::popcount(a);
    return 1.0 + delta * static_cast<double>(2 * s - static_cast<int>(n));
}

Complex ftilde_direct(std::uint64_t c, const PeriodicStateSpec& spec, double delta) {
    spec.validate();
    Complex acc = 0.0;
    for (std::uint64_t a = spec.l; a < spec.q; a += spec.r) {
        const double angle = two_pi_fraction(mulmod(a, c, spec.q), spec.q) +
                             delta * static_cast<double>(a);
        acc += std::polar(1.0, angle);
    }
    return acc / std::sqrt(static_cast<double>(spec.count()) * static_cast<double>(spec.q));
}

Complex ftilde_systematic(std::uint64_t c, const PeriodicStateSpec& spec, double delta) {
    spec.validate();
    const double sin_x = sin_half_angle(c, spec, delta);
    if (std::abs(sin_x) <= kSingularSin) {
        return ftilde_direct(c, spec, delta);
    }
    const std::uint64_t n = spec.count();
    const std::uint64_t two_q = 2 * spec.q;
    const std::uint64_t cr = mulmod(c, spec.r, two_q);
    const double half_r_delta = delta * static_cast<double>(spec.r) / 2.0;

    // e^{i l phi} with phi = 2 pi c / q + delta
    const double offset_phase = pi_multiple(mulmod(2 * spec.l, c, two_q), spec.q) +
                                static_cast<double>(spec.l) * delta;
    // (1 - e^{i n r phi}) / (1 - e^{i r phi}) = e^{i (n-1) x} sin(n x) / sin(x)
    const double mid_phase =
        pi_multiple(mulmod(n - 1, cr, two_q), spec.q) + static_cast<double>(n - 1) * half_r_delta;
    const double sin_n_x = sin_pi_plus(mulmod(n, cr, two_q), spec.q, static_cast<double>(n) * half_r_delta);

    const double prefactor =
        1.0 / std::sqrt(static_cast<double>(n) * static_cast<double>(spec.q));
    return prefactor * std::polar(sin_n_x / sin_x, offset_phase + mid_phase);
}

double pc_systematic(std::uint64_t c, const PeriodicStateSpec& spec, double delta) {
    spec.validate();
    if (!spec.divides()) {
        return std::norm(ftilde_systematic(c, spec, delta));
    }
    const double sin_x = sin_half_angle(c, spec, delta);
    if (std::abs(sin_x) <= kSingularSin) {
        return std::norm(ftilde_direct(c, spec, delta));
    }
    const double q = static_cast<double>(spec.q);
    const double num = std::sin(delta * q / 2.0);
    return static_cast<double>(spec.r) / (q * q) * (num * num) / (sin_x * sin_x);
}

std::vector<double> singular_deltas(const PeriodicStateSpec& spec, std::uint64_t c,
                                    std::int64_t k_lo, std::int64_t k_hi) {
    spec.validate();
    std::vector<double> out;
    const double cr_over_q =
        static_cast<double>(c) * static_cast<double>(spec.r) / static_cast<double>(spec.q);
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        out.push_back(2.0 * std::numbers::pi / static_cast<double>(spec.r) *
                      (static_cast<double>(k) - cr_over_q));
    }
    return out;
}

double pc_double_sum(std::uint64_t c, const PeriodicStateSpec& spec,
                     std::span<const double> amp_errors, std::span<const double> phase_errors) {
    spec.validate();
    const std::uint64_t n = spec.count();
    if (amp_errors.size() != n || phase_errors.size() != n) {
        throw DomainError("pc_double_sum error arrays must have length " + std::to_string(n));
    }
    const std::uint64_t q = spec.q;
    const std::uint64_t cr = mulmod(c, spec.r, q);
    std::vector<double> weight(n);
    std::vector<double> drift(n);
    for (std::uint64_t m = 0; m < n; ++m) {
        weight[m] = 1.0 + amp_errors[m];
        drift[m] = static_cast<double>(m * spec.r + spec.l) * phase_errors[m];
    }
    double acc = 0.0;
    for (std::uint64_t m = 0; m < n; ++m) {
        for (std::uint64_t k = 0; k < n; ++k) {
            // (2 pi c / q) r (m - k), reduced mod 2 pi
            const std::uint64_t diff = (m + q - k % q) % q;
            const double base = two_pi_fraction(mulmod(cr, diff, q), q);
            acc += weight[m] * weight[k] * std::cos(base + drift[m] - drift[k]);
        }
    }
    return acc / (static_cast<double>(n) * static_cast<double>(q));
}

std::vector<double> pc_double_sum_all(const PeriodicStateSpec& spec,
                                      std::span<const double> amp_errors,
                                      std::span<const double> phase_errors) {
    std::vector<double> out(spec.q);
    for (std::uint64_t c = 0; c < spec.q; ++c) {
        out[c] = pc_double_sum(c, spec, amp_errors, phase_errors);
    }
    return out;
}

std::vector<double> pc_systematic_all(const PeriodicStateSpec& spec, double delta) {
    std::vector<double> out(spec.q);
    for (std::uint64_t c = 0; c < spec.q; ++c) {
        out[c] = pc_systematic(c, spec, delta);
    }
    return out;
}

} // namespace shorsim
