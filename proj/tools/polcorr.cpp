/*
 * Copyright 2026 The polcorr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// polcorr: correlation functions of partially polarized chaotic beams.

#include "cli_commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace {

using polcorr::cli::ConfigError;

int emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return polcorr::cli::kExitOk;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return polcorr::cli::kExitConfig;
    }
    out << text;
    return polcorr::cli::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace polcorr;
    using namespace polcorr::cli;

    CLI::App app{"Correlation functions of partially polarized chaotic particle beams"};
    app.set_config("--config", "", "Read 'key = value' settings; command-line flags take precedence");
    app.require_subcommand(1);

    RunConfig cfg;
    int k = 0;
    double P = 0.0;
    std::string P_grid;
    std::string statistics = "fermion";
    std::string coherence = "gaussian";

    auto* k_opt = app.add_option("--k", k, "Correlation order");
    auto* P_opt = app.add_option("--P", P, "Degree of polarization in [0, 1]");
    auto* grid_opt = app.add_option("--P-grid", P_grid, "Polarization grid min:step:max");
    app.add_option("--statistics", statistics, "Particle statistics")
        ->check(CLI::IsMember({"fermion", "boson"}));
    app.add_option("--coherence", coherence, "Coherence model")
        ->check(CLI::IsMember({"gaussian", "lorentzian"}));
    app.add_option("--tau-c", cfg.tau_c, "Coherence time");
    app.add_option("--matrix-file", cfg.matrix_file, "Explicit coherence matrix file");
    app.add_option("--points", cfg.points, "Detection points t1,t2,...")->delimiter(',');
    app.add_option("--intensity", cfg.intensity, "Mean intensity per detection point");
    app.add_option("--delta-grid", cfg.delta_grid, "Point-separation grid for dip-curve");
    app.add_option("--samples", cfg.samples, "Monte Carlo samples per boson case");
    app.add_option("--seed", cfg.seed, "Random seed");
    app.add_option("--workers", cfg.workers, "Worker threads");
    app.add_option("--instances", cfg.fermion_instances, "Random instances in the fermion suite");
    app.add_option("--suite", cfg.suite, "Verification suite")
        ->check(CLI::IsMember({"all", "fermion", "boson"}));
    app.add_flag("--corrupt-kernel", cfg.corrupt_kernel,
                 "Negative control: scale multi-point kernel values so verification must fail");
    app.add_option("--out", cfg.out, "Output CSV path (default: stdout)");

    const std::map<std::string, Command> commands{{"weight-curve", Command::WeightCurve},
                                                  {"dip-curve", Command::DipCurve},
                                                  {"corr-table", Command::CorrTable},
                                                  {"verify", Command::Verify}};
    app.add_subcommand("weight-curve", "Weight factor w(k, P) over a polarization grid")->fallthrough();
    app.add_subcommand("dip-curve", "Normalized two-point correlation versus separation")->fallthrough();
    app.add_subcommand("corr-table", "Enumerated and grouped correlation functions")->fallthrough();
    app.add_subcommand("verify", "Run the Fock and Monte Carlo oracle suites")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    cfg.command = commands.at(app.get_subcommands().front()->get_name());
    if (*k_opt) cfg.k = k;
    if (*P_opt) cfg.P = P;
    if (*grid_opt) cfg.P_grid = P_grid;
    cfg.statistics = *parse_statistics(statistics);
    cfg.coherence = coherence == "lorentzian" ? CoherenceKind::Lorentzian : CoherenceKind::Gaussian;

    try {
        switch (cfg.command) {
            case Command::WeightCurve: return emit(weight_curve_csv(cfg), cfg.out);
            case Command::DipCurve: return emit(dip_curve_csv(cfg), cfg.out);
            case Command::CorrTable: {
                const auto table = corr_table(cfg);
                if (const int rc = emit(table.csv, cfg.out); rc != kExitOk) return rc;
                if (table.max_rel_diff > kCorrTableTolerance) {
                    std::cerr << "enumeration and grouped sums disagree: max relative difference "
                              << format_number(table.max_rel_diff) << '\n';
                    return kExitValidation;
                }
                return kExitOk;
            }
            case Command::Verify: {
                const auto report = run_verify(cfg);
                std::cout << report.summary;
                if (!cfg.out.empty())
                    if (const int rc = emit(report.csv, cfg.out); rc != kExitOk) return rc;
                return report.passed ? kExitOk : kExitValidation;
            }
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::logic_error& e) {
        // domain_error, invalid_argument, length_error, out_of_range
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
