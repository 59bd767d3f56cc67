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

#include "polcorr/core_types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace polcorr {

std::string_view to_string(Statistics s) {
    switch (s) {
        case Statistics::Fermion: return "fermion";
        case Statistics::Boson: return "boson";
        case Statistics::Custom: return "custom";
    }
    return "unknown";
}

std::optional<Statistics> parse_statistics(std::string_view text) {
    if (text == "fermion") return Statistics::Fermion;
    if (text == "boson") return Statistics::Boson;
    if (text == "custom") return Statistics::Custom;
    return std::nullopt;
}

std::pair<double, double> rho_from_P(double P) {
    if (!std::isfinite(P) || P < 0.0 || P > 1.0)
        throw std::domain_error("degree of polarization must lie in [0, 1], got " + std::to_string(P));
    return {(1.0 + P) / 2.0, (1.0 - P) / 2.0};
}

PolarizationState::PolarizationState(double degree) : degree_(degree) {
    std::tie(rho_up_, rho_down_) = rho_from_P(degree);
}

CoherenceModel::CoherenceModel(CoherenceKind kind, double corr_time, Profile profile)
    : kind_(kind), corr_time_(corr_time), profile_(std::move(profile)) {
    if (!std::isfinite(corr_time) || corr_time <= 0.0)
        throw std::invalid_argument("coherence time must be positive and finite");
    if (!profile_) throw std::invalid_argument("coherence profile is empty");
}

CoherenceModel CoherenceModel::gaussian(double corr_time) {
    return {CoherenceKind::Gaussian, corr_time, [corr_time](double d) {
                const double x = d / corr_time;
                return Complex{std::exp(-x * x), 0.0};
            }};
}

CoherenceModel CoherenceModel::lorentzian(double corr_time) {
    return {CoherenceKind::Lorentzian, corr_time,
            [corr_time](double d) { return Complex{std::exp(-std::abs(d) / corr_time), 0.0}; }};
}

CoherenceModel CoherenceModel::custom(Profile profile, double corr_time) {
    return {CoherenceKind::Custom, corr_time, std::move(profile)};
}

Complex CoherenceModel::operator()(SpacetimePoint p, SpacetimePoint q) const {
    return profile_(p.tau - q.tau);
}

CoherenceMatrix CoherenceMatrix::from_entries(ComplexMatrix entries, double tol) {
    const std::size_t k = entries.size();
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const Complex g = entries(i, j);
            if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
                throw std::invalid_argument("coherence matrix has a non-finite entry");
            if (std::abs(g - std::conj(entries(j, i))) > tol)
                throw std::invalid_argument("coherence matrix is not Hermitian");
            if (std::abs(g) > 1.0 + tol)
                throw std::invalid_argument("coherence matrix entry exceeds unit modulus");
        }
        if (std::abs(entries(i, i) - 1.0) > tol)
            throw std::invalid_argument("coherence matrix diagonal must be 1");
    }
    if (k > 0 && min_eigenvalue_hermitian(entries) < -tol)
        throw std::invalid_argument("coherence matrix is not positive semidefinite");
    return CoherenceMatrix(std::move(entries));
}

CoherenceMatrix CoherenceMatrix::identity(std::size_t k) {
    return CoherenceMatrix(ComplexMatrix::identity(k));
}

CoherenceMatrix CoherenceMatrix::full(std::size_t k) {
    return CoherenceMatrix(ComplexMatrix(k, Complex{1.0, 0.0}));
}

CoherenceMatrix build_coherence_matrix(std::span<const SpacetimePoint> points,
                                       const CoherenceModel& model) {
    const std::size_t k = points.size();
    ComplexMatrix m(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (!std::isfinite(points[i].tau))
            throw std::invalid_argument("detection point must be finite");
        m(i, i) = model(points[i], points[i]);
        for (std::size_t j = i + 1; j < k; ++j) {
            m(i, j) = model(points[i], points[j]);
            m(j, i) = std::conj(m(i, j));
        }
    }
    return CoherenceMatrix::from_entries(std::move(m));
}

BeamSpec::BeamSpec(Statistics statistics, PolarizationState polarization, CoherenceModel coherence,
                   double mean_intensity)
    : statistics_(statistics),
      polarization_(polarization),
      coherence_(std::move(coherence)),
      mean_intensity_(mean_intensity) {
    if (statistics == Statistics::Custom)
        throw std::invalid_argument("a beam is either fermionic or bosonic");
    if (!std::isfinite(mean_intensity) || mean_intensity < 0.0)
        throw std::invalid_argument("mean intensity must be finite and non-negative");
}

}  // namespace polcorr
