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

#ifndef POLCORR_CORE_TYPES_HPP
#define POLCORR_CORE_TYPES_HPP

#include "polcorr/linalg.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace polcorr {

/// Tolerance used when validating Hermiticity, unit diagonal, |gamma| <= 1 and
/// positive semidefiniteness of coherence matrices.
inline constexpr double kCoherenceTolerance = 1e-10;

enum class Statistics { Fermion, Boson, Custom };

std::string_view to_string(Statistics s);
std::optional<Statistics> parse_statistics(std::string_view text);

/// Occupations of the two spin (or polarization) components for a degree of
/// polarization P in [0, 1]: ((1+P)/2, (1-P)/2). Throws std::domain_error for
/// P outside [0, 1] or non-finite P.
std::pair<double, double> rho_from_P(double P);

/// Degree of polarization together with the occupation pair it induces, in
/// the basis that diagonalizes the spin density operator. The pair is always
/// derived from P so the two can never disagree.
class PolarizationState {
public:
    explicit PolarizationState(double degree);

    double degree() const noexcept { return degree_; }
    double rho_up() const noexcept { return rho_up_; }
    double rho_down() const noexcept { return rho_down_; }

private:
    double degree_;
    double rho_up_;
    double rho_down_;
};

/// Detection coordinate, in the same units as the coherence time.
struct SpacetimePoint {
    double tau = 0.0;
};

enum class CoherenceKind { Gaussian, Lorentzian, Custom };

/// Stationary coherence model gamma(p, q) = f(p.tau - q.tau).
///   Gaussian:   f(d) = exp(-(d / tau_c)^2)
///   Lorentzian: f(d) = exp(-|d| / tau_c)
/// A custom profile must satisfy f(0) = 1, |f| <= 1 and f(-d) = conj(f(d));
/// matrices built from it are validated.
class CoherenceModel {
public:
    using Profile = std::function<Complex(double delta)>;

    static CoherenceModel gaussian(double corr_time);
    static CoherenceModel lorentzian(double corr_time);
    static CoherenceModel custom(Profile profile, double corr_time = 1.0);

    CoherenceKind kind() const noexcept { return kind_; }
    double corr_time() const noexcept { return corr_time_; }

    Complex operator()(SpacetimePoint p, SpacetimePoint q) const;

private:
    CoherenceModel(CoherenceKind kind, double corr_time, Profile profile);

    CoherenceKind kind_;
    double corr_time_;
    Profile profile_;
};

/// Hermitian, unit-diagonal, positive semidefinite matrix of complex degrees
/// of coherence between k detection points. Order 0 is allowed.
class CoherenceMatrix {
public:
    CoherenceMatrix() = default;

    /// Validates the invariants within `tol`; throws std::invalid_argument.
    static CoherenceMatrix from_entries(ComplexMatrix entries, double tol = kCoherenceTolerance);
    static CoherenceMatrix identity(std::size_t k);
    /// Every entry 1 (all points mutually fully coherent).
    static CoherenceMatrix full(std::size_t k);

    std::size_t order() const noexcept { return entries_.size(); }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
    const ComplexMatrix& entries() const noexcept { return entries_; }

    ComplexMatrix restricted(std::span<const std::size_t> index) const {
        return entries_.submatrix(index);
    }

private:
    explicit CoherenceMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {}

    ComplexMatrix entries_;
};

CoherenceMatrix build_coherence_matrix(std::span<const SpacetimePoint> points,
                                       const CoherenceModel& model);

/// A chaotic beam: particle statistics, polarization, coherence model and a
/// uniform mean intensity per detection point.
class BeamSpec {
public:
    BeamSpec(Statistics statistics, PolarizationState polarization, CoherenceModel coherence,
             double mean_intensity);

    Statistics statistics() const noexcept { return statistics_; }
    const PolarizationState& polarization() const noexcept { return polarization_; }
    const CoherenceModel& coherence() const noexcept { return coherence_; }
    double mean_intensity() const noexcept { return mean_intensity_; }

    std::vector<double> intensities(std::size_t n) const {
        return std::vector<double>(n, mean_intensity_);
    }

private:
    Statistics statistics_;
    PolarizationState polarization_;
    CoherenceModel coherence_;
    double mean_intensity_;
};

}  // namespace polcorr

#endif  // POLCORR_CORE_TYPES_HPP
