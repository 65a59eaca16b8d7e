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
#include <numbers>

#include "shorsim/noisy_gates.hpp"

using namespace shorsim;

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

bool close(const SingleQubitGate& a, const SingleQubitGate& b, double tol) {
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            if (std::abs(a.m[r][c] - b.m[r][c]) > tol) {
                return false;
            }
        }
    }
    return true;
}

StateVector random_state(unsigned n, RngStream& rng) {
    StateVector s(n);
    for (std::size_t i = 0; i < s.size(); ++i) {
        s[i] = Complex(rng.normal(), rng.normal());
    }
    s.normalize();
    return s;
}

} // namespace

TEST_CASE("hadamard_gate matrices") {
    const auto h0 = hadamard_gate(0.0);
    CHECK(h0.m[0][0].real() == doctest::Approx(kInvSqrt2));
    CHECK(h0.m[0][1].real() == doctest::Approx(-kInvSqrt2));
    CHECK(h0.m[1][0].real() == doctest::Approx(kInvSqrt2));
    CHECK(h0.m[1][1].real() == doctest::Approx(kInvSqrt2));

    const auto hq = hadamard_gate(std::numbers::pi / 4);
    CHECK(std::abs(hq.m[0][0]) < 1e-15);
    CHECK(hq.m[0][1].real() == doctest::Approx(-1.0));
    CHECK(hq.m[1][0].real() == doctest::Approx(1.0));
    CHECK(std::abs(hq.m[1][1]) < 1e-15);

    // First-order form (1/sqrt2)[[1-d, -(1+d)], [1+d, 1-d]].
    const double d = 0.05;
    const auto h = hadamard_gate(d);
    const double lo = kInvSqrt2 * (1 - d);
    const double hi = kInvSqrt2 * (1 + d);
    CHECK(std::abs(h.m[0][0].real() - lo) < 2e-3);
    CHECK(std::abs(h.m[0][1].real() + hi) < 2e-3);
    CHECK(std::abs(h.m[1][0].real() - hi) < 2e-3);
    CHECK(std::abs(h.m[1][1].real() - lo) < 2e-3);
    CHECK(close(h, y_rotation(std::numbers::pi / 2 + 2 * d), 1e-15));
}

TEST_CASE("every gate is unitary and a y-rotation by pi/2 + 2 delta") {
    RngStream rng(314, 0);
    for (int i = 0; i < 100; ++i) {
        const double d = (rng.uniform01() - 0.5) * 1.5;
        const auto h = hadamard_gate(d);
        CHECK(h.is_unitary(1e-12));
        CHECK(qft_hadamard(d).is_unitary(1e-12));
        CHECK(close(h, y_rotation(std::numbers::pi / 2 + 2 * d), 1e-14));
    }
}

TEST_CASE("qft_hadamard is the textbook Hadamard at zero error") {
    const auto h = qft_hadamard(0.0);
    CHECK(h.m[0][0].real() == doctest::Approx(kInvSqrt2));
    CHECK(h.m[0][1].real() == doctest::Approx(kInvSqrt2));
    CHECK(h.m[1][0].real() == doctest::Approx(kInvSqrt2));
    CHECK(h.m[1][1].real() == doctest::Approx(-kInvSqrt2));
}

TEST_CASE("controlled_phase_gate") {
    CHECK(controlled_phase_gate(0, 1, 0.0).phase == doctest::Approx(std::numbers::pi / 2));
    CHECK(controlled_phase_gate(0, 3, 0.0).phase == doctest::Approx(std::numbers::pi / 8));
    CHECK(controlled_phase_gate(1, 2, 0.05).phase == doctest::Approx(std::numbers::pi / 2 + 0.05));
    CHECK_THROWS_AS(controlled_phase_gate(2, 2, 0.0), DomainError);
    CHECK_THROWS_AS(controlled_phase_gate(3, 1, 0.0), DomainError);
}

TEST_CASE("apply_single_qubit") {
    SUBCASE("hadamard on |0>") {
        StateVector s = new_basis_state(1, 0);
        apply_single_qubit(s, 0, hadamard_gate(0.0));
        CHECK(s[0].real() == doctest::Approx(kInvSqrt2));
        CHECK(s[1].real() == doctest::Approx(kInvSqrt2));
    }
    SUBCASE("noisy hadamard on |0>") {
        const double d = 0.07;
        StateVector s = new_basis_state(1, 0);
        apply_single_qubit(s, 0, hadamard_gate(d));
        CHECK(s[0].real() == doctest::Approx((std::cos(d) - std::sin(d)) * kInvSqrt2));
        CHECK(s[1].real() == doctest::Approx((std::sin(d) + std::cos(d)) * kInvSqrt2));
    }
    SUBCASE("acts on the addressed qubit only") {
        // |01> (qubit 0 set); flip-like rotation by pi on qubit 1 gives |11>.
        StateVector s = new_basis_state(2, 1);
        apply_single_qubit(s, 1, y_rotation(std::numbers::pi));
        CHECK(std::abs(s[3] - Complex(1.0)) < 1e-15);
        CHECK(std::abs(s[1]) < 1e-15);
    }
    SUBCASE("gate then inverse restores the state") {
        RngStream rng(8, 0);
        for (int i = 0; i < 20; ++i) {
            const StateVector orig = random_state(4, rng);
            StateVector s = orig;
            const auto g = hadamard_gate(rng.uniform01() - 0.5);
            const unsigned q = static_cast<unsigned>(rng.next_u64() % 4);
            apply_single_qubit(s, q, g);
            apply_single_qubit(s, q, g.adjoint());
            for (std::size_t k = 0; k < s.size(); ++k) {
                REQUIRE(std::abs(s[k] - orig[k]) < 1e-12);
            }
        }
    }
    SUBCASE("out of range") {
        StateVector s(2);
        CHECK_THROWS_AS(apply_single_qubit(s, 2, hadamard_gate(0)), DomainError);
    }
}

TEST_CASE("apply_controlled_phase") {
    StateVector s(2, {0.5, 0.5, 0.5, 0.5});
    apply_controlled_phase(s, 0, 1, {std::numbers::pi});
    CHECK(s[0] == Complex(0.5));
    CHECK(s[1] == Complex(0.5));
    CHECK(s[2] == Complex(0.5));
    CHECK(std::abs(s[3] + 0.5) < 1e-15);

    RngStream rng(77, 0);
    for (int i = 0; i < 20; ++i) {
        StateVector t = random_state(5, rng);
        apply_controlled_phase(t, 1, 4, {rng.normal()});
        REQUIRE(std::abs(t.norm_squared() - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(apply_controlled_phase(s, 1, 1, {0.1}), DomainError);
    CHECK_THROWS_AS(apply_controlled_phase(s, 0, 2, {0.1}), DomainError);
}

TEST_CASE("norm preserved through long random gate sequences") {
    RngStream rng(1234, 0);
    StateVector s = random_state(6, rng);
    const auto model = ErrorModel::em3_gauss(0.2, 0.3);
    for (int i = 0; i < 500; ++i) {
        const auto q1 = static_cast<unsigned>(rng.next_u64() % 6);
        const auto q2 = static_cast<unsigned>((q1 + 1 + rng.next_u64() % 5) % 6);
        apply_single_qubit(s, q1, hadamard_gate(sample_gate_error(model, rng) * 0.1));
        apply_controlled_phase(s, q1, q2, {sample_gate_error(model, rng)});
    }
    CHECK(std::abs(s.norm_squared() - 1.0) < 1e-10);
}

TEST_CASE("error modes") {
    CHECK(parse_error_mode("em2g") == ErrorMode::EM2Gauss);
    CHECK_FALSE(parse_error_mode("bogus").has_value());
    for (auto m : {ErrorMode::None, ErrorMode::EM1, ErrorMode::EM2Uniform, ErrorMode::EM2Gauss,
                   ErrorMode::EM3Uniform, ErrorMode::EM3Gauss}) {
        CHECK(parse_error_mode(to_string(m)) == m);
    }
    CHECK_THROWS_AS(ErrorModel::em2_uniform(-0.1), DomainError);
    CHECK_THROWS_AS(ErrorModel::em2_gauss(-1.0), DomainError);
}

TEST_CASE("sample_gate_error") {
    RngStream rng(2718, 0);
    SUBCASE("none and systematic are deterministic") {
        for (int i = 0; i < 100; ++i) {
            REQUIRE(sample_gate_error(ErrorModel::none(), rng) == 0.0);
            REQUIRE(sample_gate_error(ErrorModel::em1(0.05), rng) == 0.05);
        }
    }
    SUBCASE("EM2 ignores delta0") {
        ErrorModel m = ErrorModel::em2_uniform(0.0);
        m.delta0 = 0.7;
        CHECK(sample_gate_error(m, rng) == 0.0);
    }
    SUBCASE("uniform support and mean") {
        const auto m = ErrorModel::em2_uniform(0.1);
        const int n = 1000000;
        double sum = 0.0;
        bool in_range = true;
        for (int i = 0; i < n; ++i) {
            const double x = sample_gate_error(m, rng);
            in_range = in_range && std::abs(x) <= 0.1;
            sum += x;
        }
        CHECK(in_range);
        // sd of U(-a, a) is a / sqrt(3)
        CHECK(std::abs(sum / n) < 3.0 * 0.1 / std::sqrt(3.0) / std::sqrt(n));
    }
    SUBCASE("gaussian width") {
        const auto m = ErrorModel::em2_gauss(0.03);
        const int n = 100000;
        double sum = 0.0, sum2 = 0.0, largest = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = sample_gate_error(m, rng);
            sum += x;
            sum2 += x * x;
            largest = std::max(largest, std::abs(x));
        }
        const double mean = sum / n;
        CHECK(std::sqrt(sum2 / n - mean * mean) == doctest::Approx(0.03).epsilon(0.05));
        // No cut-off: draws beyond 3.5 sigma occur.
        CHECK(largest > 3.5 * 0.03);
    }
    SUBCASE("EM3 centres on delta0") {
        const auto m = ErrorModel::em3_uniform(0.2, 0.05);
        double sum = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const double x = sample_gate_error(m, rng);
            REQUIRE(std::abs(x - 0.2) <= 0.05);
            sum += x;
        }
        CHECK(sum / 10000 == doctest::Approx(0.2).epsilon(0.01));
    }
}
