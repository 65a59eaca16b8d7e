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

// Command-line front end: figure reproduction, Shor trials, threshold sweeps
// and the self-test.
//
// Exit codes: 0 success, 1 self-test failure, 2 invalid arguments,
// 3 I/O failure, 4 degenerate instance.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "shorsim/experiment.hpp"
#include "shorsim/selftest.hpp"
#include "shorsim/shor.hpp"

namespace fs = std::filesystem;
using namespace shorsim;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;
constexpr int kExitDegenerate = 4;

// Reads a flat `key = value` file (# comments) and appends `--key value` for
// every key not already given on the command line. Boolean keys become bare
// flags when true.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string config_path;
    std::set<std::string> given;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--config" && i + 1 < args.size()) {
            config_path = args[i + 1];
        } else if (a.rfind("--config=", 0) == 0) {
            config_path = a.substr(9);
        }
        if (a.rfind("--", 0) == 0) {
            given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
        }
    }
    if (config_path.empty()) {
        return args;
    }
    std::istringstream in(read_text_file(config_path));
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw CLI::ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.rfind("--", 0) == 0) {
            key = key.substr(2);
        }
        if (given.count(key) != 0) {
            continue;
        }
        if (value == "true") {
            args.push_back("--" + key);
        } else if (value != "false") {
            args.push_back("--" + key);
            args.push_back(value);
        }
    }
    return args;
}

DataFormat format_for(const fs::path& path) {
    return path.extension() == ".json" ? DataFormat::Json : DataFormat::Csv;
}

ErrorModel build_model(const std::string& mode_text, double delta0, double s_max, double sigma0) {
    const auto mode = parse_error_mode(mode_text);
    if (!mode) {
        throw DomainError("unknown mode '" + mode_text + "'");
    }
    ErrorModel m{*mode, delta0, s_max, sigma0, 0};
    m.validate();
    return m;
}

nlohmann::json trials_to_json(const ShorInstance& inst, const ErrorModel& model, std::uint64_t seed,
                              const std::vector<TrialResult>& trials, const SuccessEstimate& est) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& t : trials) {
        rows.push_back({{"stream_id", t.stream_id},
                        {"measured_l", t.measured_l},
                        {"measured_z", t.measured_z},
                        {"measured_c", t.measured_c},
                        {"recovered_r", t.recovered_r ? nlohmann::json(*t.recovered_r) : nlohmann::json()},
                        {"success", t.success}});
    }
    return {{"metadata",
             {{"tool", "shorsim"},
              {"version", kToolVersion},
              {"n", inst.n},
              {"y", inst.y},
              {"q", inst.q},
              {"r", inst.r},
              {"mode", std::string(to_string(model.mode))},
              {"delta0", model.delta0},
              {"s_max", model.s_max},
              {"sigma0", model.sigma0},
              {"seed", seed}}},
            {"success", {{"successes", est.successes}, {"trials", est.trials}, {"p", est.p}, {"lo", est.lo}, {"hi", est.hi}}},
            {"trials", std::move(rows)}};
}

std::string trials_to_csv(const std::vector<TrialResult>& trials) {
    std::string out = "stream_id,measured_l,measured_z,measured_c,recovered_r,success\n";
    for (const auto& t : trials) {
        out += std::to_string(t.stream_id) + ',' + std::to_string(t.measured_l) + ',' +
               std::to_string(t.measured_z) + ',' + std::to_string(t.measured_c) + ',' +
               (t.recovered_r ? std::to_string(*t.recovered_r) : std::string()) + ',' +
               (t.success ? "1" : "0") + '\n';
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shor's algorithm under imperfect gates: figures, trials and thresholds"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "Flat key = value file mirroring the flags (flags win)");

    // figure
    auto* fig = app.add_subcommand("figure", "Reproduce one of the four probability figures");
    FigureSpec fspec;
    std::string fig_out;
    bool fig_svg = false;
    fig->add_option("id", fspec.id, "Figure number")->required()->check(CLI::Range(1, 4));
    fig->add_option("--q", fspec.q, "Register size (power of two)")->capture_default_str();
    fig->add_option("--r", fspec.r, "Period")->capture_default_str();
    fig->add_option("--l", fspec.l, "Offset")->capture_default_str();
    fig->add_option("--seed", fspec.seed, "Seed for random subfigures")->capture_default_str();
    fig->add_option("--trials", fspec.trials, "Realizations averaged per random subfigure")->capture_default_str();
    fig->add_option("--out", fig_out, "Output path (.json for JSON, otherwise CSV); stdout if omitted");
    fig->add_flag("--svg", fig_svg, "Also write an SVG next to --out");
    fig->add_flag("--gate-level", fspec.gate_level, "Random subfigures via the gate-level circuit");

    // shor
    auto* shor = app.add_subcommand("shor", "Run repeated order-finding trials");
    std::uint64_t n = 15, y = 7, seed = 1;
    std::string mode = "none";
    double delta0 = 0.0, s_max = 0.0, sigma0 = 0.0;
    std::size_t trials = 1000;
    std::string shor_out;
    shor->add_option("--n", n, "Number to factor")->capture_default_str();
    shor->add_option("--y", y, "Base")->capture_default_str();
    shor->add_option("--mode", mode, "none|em1|em2u|em2g|em3u|em3g")->capture_default_str();
    shor->add_option("--delta0", delta0, "Systematic error (rad)")->capture_default_str();
    shor->add_option("--smax", s_max, "Uniform half-width (rad)")->capture_default_str();
    shor->add_option("--sigma0", sigma0, "Gaussian width (rad)")->capture_default_str();
    shor->add_option("--trials", trials, "Trial count")->capture_default_str()->check(CLI::PositiveNumber);
    shor->add_option("--seed", seed, "Seed")->capture_default_str();
    shor->add_option("--out", shor_out, "Per-trial output (.json or CSV)");

    // threshold
    auto* thr = app.add_subcommand("threshold", "Sweep an error magnitude and estimate the threshold");
    std::string grid_text = "0.001,0.002,0.005,0.01,0.02,0.05,0.1";
    double target = 0.25;
    std::string thr_out;
    std::size_t thr_trials = 400;
    std::string thr_mode = "em1";
    double thr_delta0 = 0.0;
    thr->add_option("--n", n, "Number to factor")->capture_default_str();
    thr->add_option("--y", y, "Base")->capture_default_str();
    thr->add_option("--mode", thr_mode, "em1|em2u|em2g|em3u|em3g")->capture_default_str();
    thr->add_option("--grid", grid_text, "a:b:steps or comma list")->capture_default_str();
    thr->add_option("--trials", thr_trials, "Trials per grid point")->capture_default_str()->check(CLI::PositiveNumber);
    thr->add_option("--target", target, "Success target")->capture_default_str();
    thr->add_option("--delta0", thr_delta0, "Systematic offset for em3 modes")->capture_default_str();
    thr->add_option("--seed", seed, "Seed")->capture_default_str();
    thr->add_option("--out", thr_out, "Output path (.json or CSV)");

    auto* self = app.add_subcommand("selftest", "Run the built-in invariant checks");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = merge_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }

    try {
        if (*fig) {
            const Dataset data = run_figure(fspec);
            if (fig_out.empty()) {
                std::cout << dataset_to_csv(data);
                if (fig_svg) {
                    emit_svg(data, "figure" + std::to_string(fspec.id) + ".svg",
                             {720, 220, "Figure " + std::to_string(fspec.id)});
                }
            } else {
                const fs::path out(fig_out);
                emit_dataset(data, format_for(out), out);
                if (fig_svg) {
                    fs::path svg = out;
                    svg.replace_extension(".svg");
                    emit_svg(data, svg, {720, 220, "Figure " + std::to_string(fspec.id)});
                }
            }
        } else if (*shor) {
            const ShorInstance inst = ShorInstance::make(n, y);
            const ErrorModel model = build_model(mode, delta0, s_max, sigma0);
            const auto results = run_trials(inst, model, trials, seed);
            std::size_t ok = 0;
            for (const auto& t : results) {
                ok += t.success ? 1 : 0;
            }
            const auto est = wilson_interval(ok, results.size());
            std::printf("N=%llu y=%llu q=%llu r=%llu mode=%s\n", static_cast<unsigned long long>(inst.n),
                        static_cast<unsigned long long>(inst.y), static_cast<unsigned long long>(inst.q),
                        static_cast<unsigned long long>(inst.r), std::string(to_string(model.mode)).c_str());
            std::printf("success %zu/%zu = %s  (95%% Wilson [%s, %s])\n", est.successes, est.trials,
                        format_double(est.p).c_str(), format_double(est.lo).c_str(),
                        format_double(est.hi).c_str());
            if (!shor_out.empty()) {
                const fs::path out(shor_out);
                if (format_for(out) == DataFormat::Json) {
                    write_text_file(out, trials_to_json(inst, model, seed, results, est).dump(2) + "\n");
                } else {
                    write_text_file(out, trials_to_csv(results));
                }
            }
        } else if (*thr) {
            const ShorInstance inst = ShorInstance::make(n, y);
            const auto m = parse_error_mode(thr_mode);
            if (!m) {
                throw DomainError("unknown mode '" + thr_mode + "'");
            }
            const auto report =
                threshold_sweep(inst, *m, parse_grid(grid_text), thr_trials, target, seed, thr_delta0);
            std::cout << threshold_to_csv(report);
            std::cout << "threshold "
                      << (report.threshold ? format_double(*report.threshold) : std::string("none"))
                      << " (target " << format_double(target) << ")\n";
            if (!thr_out.empty()) {
                const fs::path out(thr_out);
                if (format_for(out) == DataFormat::Json) {
                    write_text_file(out, threshold_to_json(report).dump(2) + "\n");
                } else {
                    write_text_file(out, threshold_to_csv(report));
                }
            }
        } else if (*self) {
            bool all = true;
            for (const auto& check : run_selftest()) {
                std::printf("[%s] %s  (%s)\n", check.passed ? "PASS" : "FAIL", check.name.c_str(),
                            check.detail.c_str());
                all = all && check.passed;
            }
            return all ? 0 : 1;
        }
    } catch (const LuckyFactor& e) {
        std::cerr << e.what() << "\nlucky factor: " << e.factor << '\n';
        return kExitDegenerate;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const DomainError& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return 0;
}
