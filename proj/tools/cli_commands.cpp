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

#include "cli_commands.hpp"

#include "matrix_file.hpp"
#include "polcorr/kernels.hpp"
#include "polcorr/oracles.hpp"
#include "polcorr/partition.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace polcorr::cli {
namespace {

double parse_double(std::string_view text, std::string_view what) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw ConfigError("malformed number in " + std::string(what) + ": '" + std::string(text) + "'");
    return value;
}

std::vector<double> polarization_grid(const RunConfig& cfg, const char* default_grid) {
    std::vector<double> values;
    if (cfg.P_grid) {
        values = parse_grid(*cfg.P_grid).values();
    } else if (cfg.P) {
        values = {*cfg.P};
    } else {
        values = parse_grid(default_grid).values();
    }
    for (double P : values)
        if (!(P >= 0.0 && P <= 1.0)) throw ConfigError("degree of polarization outside [0, 1]");
    return values;
}

CoherenceModel coherence_model(const RunConfig& cfg) {
    if (!(cfg.tau_c > 0.0) || !std::isfinite(cfg.tau_c))
        throw ConfigError("--tau-c must be positive");
    switch (cfg.coherence) {
        case CoherenceKind::Gaussian: return CoherenceModel::gaussian(cfg.tau_c);
        case CoherenceKind::Lorentzian: return CoherenceModel::lorentzian(cfg.tau_c);
        case CoherenceKind::Custom: break;
    }
    throw ConfigError("custom coherence requires --matrix-file");
}

PolarizedKernel make_kernel(Statistics statistics, bool corrupt) {
    if (statistics == Statistics::Custom) throw ConfigError("statistics must be fermion or boson");
    auto base = PolarizedKernel::for_statistics(statistics);
    if (!corrupt) return base;
    return PolarizedKernel::custom(
        [base](std::span<const std::size_t> subset, const CoherenceMatrix& gamma,
               std::span<const double> intensities) {
            const double g = base(subset, gamma, intensities);
            return subset.size() >= 2 ? kCorruptionFactor * g : g;
        });
}

void check_intensity(double I) {
    if (!(I >= 0.0) || !std::isfinite(I)) throw ConfigError("--intensity must be finite and >= 0");
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return make_stream(seed, stream)();
}

}  // namespace

std::vector<double> Grid::values() const {
    std::vector<double> out;
    const double span = (max - min) / step;
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = min + static_cast<double>(i) * step;
        if (i + 1 == n && std::abs(v - max) < 1e-9 * step) v = max;
        out.push_back(v);
    }
    return out;
}

Grid parse_grid(std::string_view text) {
    const auto first = text.find(':');
    const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (second == std::string_view::npos)
        throw ConfigError("grid must have the form min:step:max, got '" + std::string(text) + "'");
    Grid g;
    g.min = parse_double(text.substr(0, first), "grid");
    g.step = parse_double(text.substr(first + 1, second - first - 1), "grid");
    g.max = parse_double(text.substr(second + 1), "grid");
    if (!std::isfinite(g.min) || !std::isfinite(g.max) || !(g.step > 0.0) || g.max < g.min)
        throw ConfigError("grid needs finite bounds, min <= max and a positive step");
    if ((g.max - g.min) / g.step > 1e7) throw ConfigError("grid has too many points");
    return g;
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string weight_curve_csv(const RunConfig& cfg) {
    const int k = cfg.k.value_or(10);
    if (k < 1) throw ConfigError("--k must be at least 1");
    std::ostringstream out;
    out << "P,w\n";
    for (double P : polarization_grid(cfg, "0:0.01:1"))
        out << format_number(P) << ',' << format_number(weight_factor(k, P)) << '\n';
    return out.str();
}

std::string dip_curve_csv(const RunConfig& cfg) {
    const PolarizationState pol(cfg.P.value_or(0.0));
    const auto model = coherence_model(cfg);
    const auto kernel = make_kernel(cfg.statistics, cfg.corrupt_kernel);
    const std::vector<double> unit(2, 1.0);
    std::ostringstream out;
    out << "delta_tau,O2_normalized\n";
    for (double delta : parse_grid(cfg.delta_grid).values()) {
        const SpacetimePoint pts[] = {{0.0}, {delta}};
        const auto gamma = build_coherence_matrix(pts, model);
        const double value = correlation_grouped(2, pol, kernel, gamma, unit).value;
        out << format_number(delta) << ',' << format_number(value) << '\n';
    }
    return out.str();
}

CorrTable corr_table(const RunConfig& cfg) {
    check_intensity(cfg.intensity);
    CoherenceMatrix gamma;
    if (!cfg.matrix_file.empty() && !cfg.points.empty())
        throw ConfigError("give either --points or --matrix-file, not both");
    if (!cfg.matrix_file.empty()) {
        try {
            gamma = read_matrix_file(cfg.matrix_file);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    } else if (!cfg.points.empty()) {
        std::vector<SpacetimePoint> pts;
        for (double t : cfg.points) pts.push_back({t});
        gamma = build_coherence_matrix(pts, coherence_model(cfg));
    } else {
        throw ConfigError("corr-table needs --points or --matrix-file");
    }

    const auto n_points = static_cast<int>(gamma.order());
    const int k = cfg.k.value_or(n_points);
    if (k < 1 || k > n_points) throw ConfigError("--k must lie in [1, number of points]");
    if (static_cast<std::size_t>(k) > kMaxCorrelationOrder) throw ConfigError("--k exceeds cap");

    const auto kernel = make_kernel(cfg.statistics, cfg.corrupt_kernel);
    const std::vector<double> intensities(gamma.order(), cfg.intensity);
    const EngineOptions options{cfg.workers};

    CorrTable table;
    std::ostringstream out;
    out << "P,k,enumeration,grouped,rel_diff\n";
    for (double P : polarization_grid(cfg, "0.5:1:0.5")) {
        const PolarizationState pol(P);
        for (int order = 1; order <= k; ++order) {
            const auto n = static_cast<std::size_t>(order);
            const double e = correlation_enumeration(n, pol, kernel, gamma, intensities, options).value;
            const double g = correlation_grouped(n, pol, kernel, gamma, intensities, options).value;
            const double rel = std::abs(g - e) / std::max(1.0, std::abs(e));
            table.max_rel_diff = std::max(table.max_rel_diff, rel);
            out << format_number(P) << ',' << order << ',' << format_number(e) << ','
                << format_number(g) << ',' << format_number(rel) << '\n';
        }
    }
    table.csv = out.str();
    return table;
}

VerifyReport run_verify(const RunConfig& cfg) {
    if (cfg.suite != "all" && cfg.suite != "fermion" && cfg.suite != "boson")
        throw ConfigError("--suite must be all, fermion or boson");
    if (cfg.samples < 2) throw ConfigError("--samples must be at least 2");
    if (cfg.workers < 1) throw ConfigError("--workers must be at least 1");

    VerifyReport report;
    std::ostringstream csv;
    std::ostringstream text;
    csv << "suite,case,k,P,reference,estimate,std_error,z_score,rel_dev,pass\n";
    bool all_pass = true;

    if (cfg.suite != "boson") {
        const auto kernel = make_kernel(Statistics::Fermion, cfg.corrupt_kernel);
        std::mt19937_64 rng(mix_seed(cfg.seed, 0));
        std::uniform_int_distribution<std::size_t> modes(1, 6), order(1, 3);
        std::uniform_real_distribution<double> occupation(0.05, 0.95);
        std::normal_distribution<double> normal;
        std::size_t failures = 0;
        for (std::size_t c = 0; c < cfg.fermion_instances; ++c) {
            ModeBasis basis;
            basis.occupations.resize(modes(rng));
            for (double& occ : basis.occupations) occ = occupation(rng);
            const std::size_t k = order(rng);
            basis.amplitudes.assign(k, std::vector<Complex>(basis.modes()));
            for (auto& row : basis.amplitudes)
                for (auto& a : row) a = {normal(rng), normal(rng)};

            std::vector<std::size_t> points(k);
            for (std::size_t i = 0; i < k; ++i) points[i] = i;
            const double fock = fock_oracle_fermion(basis, points);
            const auto derived = derive_coherence(basis);
            const double closed = kernel(points, derived.gamma, derived.intensities);
            double scale = 1.0;
            for (double I : derived.intensities) scale *= I;
            const double rel = std::abs(closed - fock) / std::max(std::abs(fock), scale);
            const bool pass = rel <= kFermionOracleTolerance;
            if (!pass) ++failures;
            report.max_fermion_rel_dev = std::max(report.max_fermion_rel_dev, rel);
            csv << "fermion," << c << ',' << k << ",," << format_number(fock) << ','
                << format_number(closed) << ",,," << format_number(rel) << ','
                << (pass ? 1 : 0) << '\n';
        }
        all_pass = all_pass && failures == 0;
        text << "fermion Fock oracle: " << cfg.fermion_instances << " instances, max relative deviation "
             << format_number(report.max_fermion_rel_dev) << " (limit "
             << format_number(kFermionOracleTolerance) << "), " << failures << " failing\n";
    }

    if (cfg.suite != "fermion") {
        const auto kernel = make_kernel(Statistics::Boson, cfg.corrupt_kernel);
        std::mt19937_64 rng(mix_seed(cfg.seed, 1));
        std::size_t failures = 0;
        std::size_t case_id = 0;
        for (bool full : {true, false}) {
            for (std::size_t k : {std::size_t{2}, std::size_t{3}}) {
                // One matrix per (coherence, k), shared by every P.
                const CoherenceMatrix gamma =
                    full ? CoherenceMatrix::full(k) : random_coherence_matrix(rng, k, k + 1);
                const std::vector<double> unit(k, 1.0);
                for (double P : {0.0, 0.6, 1.0}) {
                    const PolarizationState pol(P);
                    const double ref = correlation_grouped(k, pol, kernel, gamma, unit).value;
                    const MCConfig mc{cfg.samples, mix_seed(cfg.seed, 100 + case_id), cfg.workers};
                    const auto est = mc_oracle_boson(pol, gamma, unit, k, mc);
                    const double z = std::abs(est.estimate - ref) / est.std_error;
                    const double rel = std::abs(est.estimate - ref) / std::abs(ref);
                    const bool pass = z <= kBosonMaxZScore && rel <= kBosonMaxRelative;
                    if (!pass) ++failures;
                    report.max_boson_z = std::max(report.max_boson_z, z);
                    report.max_boson_rel = std::max(report.max_boson_rel, rel);
                    csv << "boson-" << (full ? "full" : "random") << ',' << case_id << ',' << k << ','
                        << format_number(P) << ',' << format_number(ref) << ','
                        << format_number(est.estimate) << ',' << format_number(est.std_error) << ','
                        << format_number(z) << ',' << format_number(rel) << ',' << (pass ? 1 : 0)
                        << '\n';
                    ++case_id;
                }
            }
        }
        all_pass = all_pass && failures == 0;
        text << "boson Monte Carlo oracle: " << case_id << " cases at " << cfg.samples
             << " samples, max z-score " << format_number(report.max_boson_z) << " (limit "
             << format_number(kBosonMaxZScore) << "), max relative deviation "
             << format_number(report.max_boson_rel) << " (limit " << format_number(kBosonMaxRelative)
             << "), " << failures << " failing\n";
    }

    text << (all_pass ? "PASS" : "FAIL") << '\n';
    report.passed = all_pass;
    report.summary = text.str();
    report.csv = csv.str();
    return report;
}

}  // namespace polcorr::cli
