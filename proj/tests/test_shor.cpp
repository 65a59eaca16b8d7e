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

#include "doctest.h"

#include <cmath>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "shorsim/shor.hpp"

using namespace shorsim;

TEST_CASE("multiplicative order") {
    CHECK(multiplicative_order(7, 15) == 4);
    CHECK(multiplicative_order(4, 15) == 2);
    CHECK(multiplicative_order(3, 10) == 4);
    CHECK(multiplicative_order(2, 21) == 6);
    try {
        multiplicative_order(6, 15);
        FAIL("expected LuckyFactor");
    } catch (const LuckyFactor& e) {
        CHECK(e.factor == 3);
    }
    CHECK(mod_pow(7, 4, 15) == 1);
    CHECK(mod_pow(2, 10, 1000) == 24);
}

TEST_CASE("instances") {
    const auto inst = ShorInstance::make(15, 7);
    CHECK(inst.num_qubits == 8);
    CHECK(inst.q == 256);
    CHECK(inst.r == 4);
    CHECK(ShorInstance::make(21, 2).q == 512);
    CHECK_THROWS_AS(ShorInstance::make(14, 3), LuckyFactor);
    CHECK_THROWS_AS(ShorInstance::make(15, 5), LuckyFactor);
    CHECK_THROWS_AS(ShorInstance::make(13, 2), DomainError);
    CHECK_THROWS_AS(ShorInstance::make(15, 1), DomainError);
    CHECK_THROWS_AS(ShorInstance::make(15, 15), DomainError);
    CHECK_THROWS_AS(ShorInstance::make(100003ULL * 100019ULL, 2), ResourceError);
}

TEST_CASE("recover_period") {
    CHECK(recover_period(64, 256, 15) == 4u);
    CHECK(recover_period(192, 256, 15) == 4u);
    CHECK(recover_period(128, 256, 15) == 2u);
    CHECK_FALSE(recover_period(0, 256, 15).has_value());

    RecoveryOptions verify;
    verify.base = 7;
    CHECK_FALSE(recover_period(128, 256, 15, verify).has_value());
    CHECK(recover_period(64, 256, 15, verify) == 4u);

    RecoveryOptions boost = verify;
    boost.boost = true;
    CHECK(recover_period(128, 256, 15, boost) == 4u);

    // One step off a peak is already outside |c/q - h/d| <= 1/(2q).
    CHECK_FALSE(recover_period(63, 256, 15).has_value());
    CHECK_FALSE(recover_period(65, 256, 15).has_value());
    CHECK(recover_period(43, 128, 15) == 3u);
}

TEST_CASE("noisy preparation") {
    RngStream rng(1, 0);
    const auto ideal = prepare_uniform_noisy(4, ErrorModel::none(), rng);
    for (std::size_t a = 0; a < ideal.size(); ++a) {
        REQUIRE(std::abs(ideal[a] - Complex(0.25)) < 1e-15);
    }

    for (double delta : {0.01, 0.02, 0.04}) {
        const unsigned n = 6;
        const auto s = prepare_uniform_noisy(n, ErrorModel::em1(delta), rng);
        CHECK(std::abs(s.norm_squared() - 1.0) < 1e-12);
        // Exact factor: prod over bits of (cos d + (2b - 1) sin d) / sqrt2 ... relative to |0>.
        const double exact = std::pow((std::cos(delta) + std::sin(delta)) / (std::cos(delta) - std::sin(delta)), n);
        CHECK(s[63].real() / s[0].real() == doctest::Approx(exact).epsilon(1e-12));
        // First-order: amplitude ratio to ideal is 1 + delta (2 s - n) + O(delta^2).
        double worst = 0.0;
        for (std::size_t a = 0; a < s.size(); ++a) {
            const double first = prep_amplitude_error(a, delta, n) / 8.0;
            worst = std::max(worst, std::abs(s[a].real() - first));
        }
        CHECK(worst < 4.0 * n * n * delta * delta / 8.0);
    }
}

TEST_CASE("post_measurement_state") {
    const auto s = post_measurement_state({16, 4, 1});
    for (std::size_t a = 0; a < 16; ++a) {
        CHECK(s[a].real() == doctest::Approx(a % 4 == 1 ? 0.5 : 0.0));
    }
    const auto t = post_measurement_state({8, 3, 0});
    CHECK(t[6].real() == doctest::Approx(1 / std::sqrt(3.0)));
}

TEST_CASE("modular exponentiation register") {
    const auto inst = ShorInstance::make(15, 7);
    RngStream rng(3, 0);
    const auto first = prepare_uniform_noisy(inst.num_qubits, ErrorModel::none(), rng);
    const auto st = entangle_modexp(first, inst);
    const auto marg = st.marginal();
    std::set<std::uint64_t> orbit;
    for (std::uint64_t k = 0; k < inst.r; ++k) {
        orbit.insert(mod_pow(7, k, 15));
    }
    double total = 0.0;
    for (const auto& [z, p] : marg) {
        CHECK(orbit.count(z) == 1);
        CHECK(p == doctest::Approx(0.25));
        total += p;
    }
    CHECK(marg.size() == orbit.size());
    CHECK(total == doctest::Approx(1.0));

    const auto collapsed = st.collapse(7);
    CHECK(std::abs(collapsed.norm_squared() - 1.0) < 1e-12);
    CHECK(std::abs(collapsed[1].real() - 0.125) < 1e-12);
    CHECK(std::abs(collapsed[0]) == 0.0);

    const auto noisy_first = prepare_uniform_noisy(inst.num_qubits, ErrorModel::em1(0.03), rng);
    const auto noisy = entangle_modexp(noisy_first, inst);
    for (const auto& [z, members] : noisy.classes) {
        for (const auto& [a, amp] : members) {
            REQUIRE(amp == noisy_first[a]);
            REQUIRE(mod_pow(7, a, 15) == z);
        }
    }
}

TEST_CASE("wilson interval") {
    const auto w = wilson_interval(50, 100);
    CHECK(w.p == 0.5);
    CHECK(w.lo == doctest::Approx(0.4038).epsilon(1e-3));
    CHECK(w.hi == doctest::Approx(0.5962).epsilon(1e-3));
    const auto z = wilson_interval(0, 10);
    CHECK(z.lo == 0.0);
    CHECK(z.hi > 0.2);
    const auto one = wilson_interval(10, 10);
    CHECK(one.hi == doctest::Approx(1.0));
    CHECK_THROWS_AS(wilson_interval(1, 0), DomainError);
}

TEST_CASE("ideal success matches exact enumeration") {
    for (std::uint64_t y : {7u, 4u}) {
        const auto inst = ShorInstance::make(15, y);
        const double expected = oracle::ideal_shor_success(15, y, inst.q, inst.r);
        const auto est = success_probability(inst, ErrorModel::none(), 1000, 2026 + y);
        CAPTURE(y);
        CAPTURE(expected);
        CHECK(est.lo <= expected);
        CHECK(expected <= est.hi);
    }
}

TEST_CASE("ideal output law") {
    const auto inst = ShorInstance::make(15, 7);
    const auto trials = run_trials(inst, ErrorModel::none(), 10000, 5);
    std::vector<std::size_t> counts(inst.q);
    for (const auto& t : trials) {
        ++counts[t.measured_c];
        if (t.success) {
            REQUIRE(mod_pow(7, *t.recovered_r, 15) == 1);
        }
    }
    std::vector<double> probs(inst.q, 0.0);
    for (std::uint64_t k = 0; k < inst.r; ++k) {
        probs[k * inst.q / inst.r] = 1.0 / static_cast<double>(inst.r);
    }
    CHECK(oracle::chi_square_p(counts, probs) > 0.001);
}

TEST_CASE("trial bookkeeping") {
    const auto inst = ShorInstance::make(15, 7);
    const auto single = success_probability(inst, ErrorModel::em2_gauss(0.05), 1, 9);
    CHECK((single.p == 0.0 || single.p == 1.0));
    const auto a = run_trials(inst, ErrorModel::em3_uniform(0.02, 0.05), 30, 77);
    const auto b = run_trials(inst, ErrorModel::em3_uniform(0.02, 0.05), 30, 77);
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].measured_c == b[i].measured_c);
        REQUIRE(a[i].measured_z == b[i].measured_z);
        REQUIRE(a[i].stream_id == i);
        REQUIRE(a[i].transcript_seed == 77);
        REQUIRE(mod_pow(7, a[i].measured_l, 15) == a[i].measured_z);
    }
}

TEST_CASE("large systematic error destroys the algorithm") {
    const auto inst = ShorInstance::make(15, 7);
    const auto est = success_probability(inst, ErrorModel::em1(0.8), 1000, 7);
    CHECK(est.p < 0.1);
}
