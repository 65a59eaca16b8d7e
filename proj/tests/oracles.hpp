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

// Independent reference computations for the tests. Nothing here calls the
// library code paths it is used to check.

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using cld = std::complex<long double>;

inline constexpr long double kPi = 3.141592653589793238462643383279502884L;

// out[c] = q^{-1/2} sum_a exp(2 pi i a c / q) in[a], in long double.
inline std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& in) {
    const std::size_t q = in.size();
    std::vector<std::complex<double>> out(q);
    for (std::size_t c = 0; c < q; ++c) {
        cld acc = 0;
        for (std::size_t a = 0; a < q; ++a) {
            const long double ang = 2 * kPi * static_cast<long double>((a * c) % q) / q;
            acc += cld(std::cos(ang), std::sin(ang)) * cld(in[a].real(), in[a].imag());
        }
        acc /= std::sqrt(static_cast<long double>(q));
        out[c] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    }
    return out;
}

inline std::uint64_t term_count(std::uint64_t q, std::uint64_t r, std::uint64_t l) {
    std::uint64_t n = 0;
    for (std::uint64_t a = l; a < q; a += r) {
        ++n;
    }
    return n;
}

// |(count q)^{-1/2} sum_j exp(i (2 pi c / q + delta)(j r + l))|^2 in long double.
inline double brute_pc(std::uint64_t c, std::uint64_t q, std::uint64_t r, std::uint64_t l, double delta) {
    cld acc = 0;
    for (std::uint64_t a = l; a < q; a += r) {
        const long double ang = 2 * kPi * static_cast<long double>((a * c) % q) / q +
                                static_cast<long double>(delta) * a;
        acc += cld(std::cos(ang), std::sin(ang));
    }
    return static_cast<double>(std::norm(acc) / (static_cast<long double>(term_count(q, r, l)) * q));
}

// Upper-tail p-value of Pearson's statistic for observed counts vs expected
// probabilities. Bins with zero expectation must have zero counts.
inline double chi_square_p(const std::vector<std::size_t>& counts, const std::vector<double>& probs) {
    const double n = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    double stat = 0.0;
    int dof = -1;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double e = n * probs[i] / total;
        if (e <= 0.0) {
            if (counts[i] != 0) {
                return 0.0;
            }
            continue;
        }
        stat += (counts[i] - e) * (counts[i] - e) / e;
        ++dof;
    }
    if (dof < 1) {
        return 1.0;
    }
    boost::math::chi_squared dist(dof);
    return boost::math::cdf(boost::math::complement(dist, stat));
}

// Exact probability that ideal order finding for (N, y) with q = 2^L
// succeeds: enumerate every second-register value z, transform its class
// exactly and count outputs c for which some h coprime to r satisfies
// |c/q - h/r| <= 1/(2q) (the convergent then has denominator exactly r).
inline double ideal_shor_success(std::uint64_t n, std::uint64_t y, std::uint64_t q, std::uint64_t r) {
    std::vector<std::uint64_t> z(q);
    std::uint64_t v = 1;
    for (std::uint64_t a = 0; a < q; ++a) {
        z[a] = v;
        v = v * y % n;
    }
    double success = 0.0;
    for (std::uint64_t target = 0; target < n; ++target) {
        std::vector<std::complex<double>> cls(q);
        double weight = 0.0;
        for (std::uint64_t a = 0; a < q; ++a) {
            if (z[a] == target) {
                cls[a] = 1.0;
                weight += 1.0;
            }
        }
        if (weight == 0.0) {
            continue;
        }
        for (auto& x : cls) {
            x /= std::sqrt(weight);
        }
        const auto out = naive_dft(cls);
        for (std::uint64_t c = 1; c < q; ++c) {
            bool ok = false;
            for (std::uint64_t h = 0; h <= r; ++h) {
                const long double gap = std::fabs(static_cast<long double>(c) / q - static_cast<long double>(h) / r);
                if (std::gcd(h, r) == 1 && gap <= 1.0L / (2 * q)) {
                    ok = true;
                }
            }
            if (ok) {
                success += weight / q * std::norm(out[c]);
            }
        }
    }
    return success;
}

} // namespace oracle
