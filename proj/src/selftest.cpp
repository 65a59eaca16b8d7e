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

#include "shorsim/selftest.hpp"

#include <cmath>
#include <sstream>

#include "shorsim/analytic.hpp"
#include "shorsim/experiment.hpp"
#include "shorsim/qft.hpp"
#include "shorsim/shor.hpp"

namespace shorsim {

namespace {

StateVector random_state(unsigned n, RngStream& rng) {
    StateVector s(n);
    for (std::size_t i = 0; i < s.size(); ++i) {
        s[i] = Complex(rng.normal(), rng.normal());
    }
    s.normalize();
    return s;
}

std::string sci(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

std::vector<CheckResult> run_selftest() {
    std::vector<CheckResult> out;
    RngStream rng(20260101, 0);

    {
        double worst_amp = 0.0;
        double worst_norm = 0.0;
        for (unsigned n = 2; n <= 7; ++n) {
            const StateVector in = random_state(n, rng);
            const StateVector ref = exact_dft(in);
            const StateVector got = noisy_qft(in, ErrorModel::none(), rng).output;
            for (std::size_t i = 0; i < in.size(); ++i) {
                worst_amp = std::max(worst_amp, std::abs(ref[i] - got[i]));
            }
            const auto noisy = noisy_qft(in, ErrorModel::em3_gauss(0.1, 0.2), rng).output;
            worst_norm = std::max(worst_norm, std::abs(noisy.norm_squared() - 1.0));
        }
        out.push_back({"gate circuit matches direct DFT", worst_amp < 1e-10, "max |diff| " + sci(worst_amp)});
        out.push_back({"noisy circuit preserves norm", worst_norm < 1e-10, "max |norm-1| " + sci(worst_norm)});
    }

    {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const PeriodicStateSpec spec{64, 4, static_cast<std::uint64_t>(i % 4)};
            const auto c = rng.next_u64() % spec.q;
            const double delta = (rng.uniform01() - 0.5);
            const double direct = std::norm(ftilde_direct(c, spec, delta));
            const std::vector<double> amp(spec.count(), 0.0);
            const std::vector<double> phase(spec.count(), delta);
            worst = std::max({worst, std::abs(direct - pc_systematic(c, spec, delta)),
                              std::abs(direct - pc_double_sum(c, spec, amp, phase))});
        }
        out.push_back({"direct sum = closed form = double sum", worst < 1e-10, "max |diff| " + sci(worst)});
    }

    {
        const auto p = pc_systematic_all({128, 4, 0}, 0.0);
        bool ok = true;
        for (std::size_t c = 0; c < p.size(); ++c) {
            const double expected = c % 32 == 0 ? 0.25 : 0.0;
            ok = ok && std::abs(p[c] - expected) < 1e-10;
        }
        out.push_back({"ideal peaks at multiples of q/r", ok, "q=128 r=4"});
    }

    {
        const auto inst = ShorInstance::make(15, 7);
        const auto a = run_trials(inst, ErrorModel::em2_gauss(0.05), 20, 99);
        const auto b = run_trials(inst, ErrorModel::em2_gauss(0.05), 20, 99);
        bool same = a.size() == b.size();
        bool verified = true;
        for (std::size_t i = 0; same && i < a.size(); ++i) {
            same = a[i].measured_c == b[i].measured_c && a[i].measured_z == b[i].measured_z;
            if (a[i].success) {
                verified = verified && mod_pow(inst.y, *a[i].recovered_r, inst.n) == 1;
            }
        }
        out.push_back({"seeded trials are reproducible", same, "20 trials, N=15"});
        out.push_back({"successful trials verify y^r = 1 mod N", verified, "20 trials, N=15"});
    }
    return out;
}

} // namespace shorsim
