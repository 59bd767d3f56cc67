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

#ifndef POLCORR_TOOLS_CLI_COMMANDS_HPP
#define POLCORR_TOOLS_CLI_COMMANDS_HPP

#include "polcorr/core_types.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polcorr::cli {

inline constexpr double kCorrTableTolerance = 1e-12;
inline constexpr double kFermionOracleTolerance = 1e-10;
inline constexpr double kBosonMaxZScore = 3.0;
inline constexpr double kBosonMaxRelative = 0.02;

/// Scale applied to every multi-point kernel value when the negative-control
/// flag is set.
inline constexpr double kCorruptionFactor = 1.05;

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitConfig = 2 };

/// Invalid or inconsistent command-line / config-file input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Command { WeightCurve, DipCurve, CorrTable, Verify };

/// Inclusive arithmetic grid "min:step:max".
struct Grid {
    double min = 0.0;
    double step = 1.0;
    double max = 0.0;

    std::vector<double> values() const;
};

Grid parse_grid(std::string_view text);

struct RunConfig {
    Command command = Command::WeightCurve;
    std::optional<int> k;
    std::optional<double> P;
    std::optional<std::string> P_grid;
    Statistics statistics = Statistics::Fermion;
    CoherenceKind coherence = CoherenceKind::Gaussian;
    double tau_c = 1.0;
    std::string matrix_file;
    std::vector<double> points;
    double intensity = 1.0;
    std::string delta_grid = "0:0.05:5";
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 20000601;
    std::size_t workers = 1;
    std::size_t fermion_instances = 200;
    std::string suite = "all";
    bool corrupt_kernel = false;
    std::string out;
};

/// 12 significant digits, shortest form.
std::string format_number(double x);

/// `P,w` rows of the weight factor; k defaults to 10, grid to 0:0.01:1.
std::string weight_curve_csv(const RunConfig& cfg);

/// `delta_tau,O2_normalized` rows for two points separated by delta_tau.
std::string dip_curve_csv(const RunConfig& cfg);

struct CorrTable {
    std::string csv;
    double max_rel_diff = 0.0;
};

/// `P,k,enumeration,grouped,rel_diff` rows for every P and every order
/// 1..k on the leading points of the configured point set.
CorrTable corr_table(const RunConfig& cfg);

struct VerifyReport {
    std::string summary;
    std::string csv;
    bool passed = false;
    double max_fermion_rel_dev = 0.0;
    double max_boson_z = 0.0;
    double max_boson_rel = 0.0;
};

VerifyReport run_verify(const RunConfig& cfg);

}  // namespace polcorr::cli

#endif  // POLCORR_TOOLS_CLI_COMMANDS_HPP
