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
#include <span>
#include <vector>

#include "shorsim/core_state.hpp"

namespace shorsim {

/// Post-measurement first register sum_j |j r + l>, j = 0 .. count()-1, in a
/// register of size q = 2^L.
struct PeriodicStateSpec {
    std::uint64_t q = 128;
    std::uint64_t r = 4;
    std::uint64_t l = 0;

    /// Throws DomainError unless q is a power of two and 0 <= l < r < q.
    void validate() const;

    /// Number of j >= 0 with j r + l <= q - 1.
    [[nodiscard]] std::uint64_t count() const noexcept { return (q - 1 - l) / r + 1; }
    [[nodiscard]] bool divides() const noexcept { return q % r == 0; }
    [[nodiscard]] unsigned num_qubits() const noexcept;
};

/// 1 + delta (2 s - n) with s = popcount(a): the first-order amplitude factor
/// of |a> after n imperfect Hadamards with a common error delta.
double prep_amplitude_error(std::uint64_t a, double delta, unsigned n);

/// Brute-force amplitude q^{-1/2} count^{-1/2} sum_j e^{i (2 pi c / q + delta)(j r + l)}.
Complex ftilde_direct(std::uint64_t c, const PeriodicStateSpec& spec, double delta);

/// Closed-form geometric sum of ftilde_direct, written as a Dirichlet kernel.
/// Falls back to direct summation where |sin(pi c r / q + delta r / 2)| <= 1e-9.
Complex ftilde_systematic(std::uint64_t c, const PeriodicStateSpec& spec, double delta);

/// P_c under a constant phase error. For r | q this is
///
///   (r / q^2) sin^2(delta q / 2) / sin^2(pi c r / q + delta r / 2),
///
/// otherwise |ftilde_systematic|^2. Same singular fallback as above.
double pc_systematic(std::uint64_t c, const PeriodicStateSpec& spec, double delta);

/// Errors delta = (2 pi / r)(k - c r / q), k in [k_lo, k_hi], at which the
/// geometric-sum denominator for output c vanishes.
std::vector<double> singular_deltas(const PeriodicStateSpec& spec, std::uint64_t c,
                                    std::int64_t k_lo, std::int64_t k_hi);

/// P_c with per-term amplitude and phase errors (arrays over j, length count()):
///
///   1/(count q) sum_m sum_k (1 + a_m)(1 + a_k)
///       cos[(2 pi c / q) r (m - k) + (m r + l) p_m - (k r + l) p_k]
///
/// 1/(count q) equals r / q^2 whenever r divides q.
double pc_double_sum(std::uint64_t c, const PeriodicStateSpec& spec,
                     std::span<const double> amp_errors, std::span<const double> phase_errors);

/// First-order combination of two amplitude errors: (1+a)(1+b) ~ 1 + (a + b).
constexpr double combined_amp_error(double delta_a, double delta_c) { return delta_a + delta_c; }

/// Evaluates pc_double_sum for every c in [0, q).
std::vector<double> pc_double_sum_all(const PeriodicStateSpec& spec,
                                      std::span<const double> amp_errors,
                                      std::span<const double> phase_errors);

/// Evaluates pc_systematic for every c in [0, q).
std::vector<double> pc_systematic_all(const PeriodicStateSpec& spec, double delta);

} // namespace shorsim
