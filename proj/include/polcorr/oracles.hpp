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

#ifndef POLCORR_ORACLES_HPP
#define POLCORR_ORACLES_HPP

#include "polcorr/core_types.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace polcorr {

inline constexpr std::size_t kFockMaxModes = 8;
inline constexpr std::size_t kFockMaxOrder = 3;
inline constexpr std::size_t kMcMaxOrder = 6;
/// Samples per Monte Carlo chunk. Each chunk owns one random stream, so the
/// estimate depends only on (seed, samples) and never on the worker count.
inline constexpr std::uint64_t kMcChunkSamples = 16384;

/// Finite set of field modes evaluated at a list of detection points.
///
/// amplitudes[p][j] is mode function j at detection point p; occupations[j]
/// is the mean occupation of mode j (in [0, 1] for fermions).
struct ModeBasis {
    std::vector<double> occupations;
    std::vector<std::vector<Complex>> amplitudes;

    std::size_t modes() const noexcept { return occupations.size(); }
    std::size_t points() const noexcept { return amplitudes.size(); }

    /// Throws std::invalid_argument on shape or range violations.
    void validate(Statistics statistics) const;
};

struct DerivedCoherence {
    CoherenceMatrix gamma;
    std::vector<double> intensities;
};

/// First-order correlation Gamma(p, q) = sum_j occ_j phi_j(p) conj(phi_j(q)),
/// split into intensities Gamma(p, p) and the normalized coherence matrix.
DerivedCoherence derive_coherence(const ModeBasis& basis);

/// Exact normally ordered k-point correlation of a chaotic fermion field
/// psi(p) = sum_j phi_j(p) a_j, evaluated by enumerating all 2^M occupation
/// configurations of the diagonal chaotic density operator and applying the
/// annihilators with their Jordan-Wigner signs. k = points.size().
double fock_oracle_fermion(const ModeBasis& basis, std::span<const std::size_t> points);

struct MCConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
};

struct MCEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

/// Random stream for chunk `chunk` of a run seeded with `seed`.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t chunk);

/// Random coherence matrix: the Gram matrix of k unit vectors drawn
/// uniformly from C^dim. Rank is min(k, dim).
CoherenceMatrix random_coherence_matrix(std::mt19937_64& rng, std::size_t k, std::size_t dim);

/// Draws the classical field of a partially polarized chaotic boson beam as
/// two independent circular complex Gaussian components sharing one
/// coherence matrix: up ~ CN(0, rho_up D gamma D), down ~ CN(0, rho_down D
/// gamma D), D = diag(sqrt(I)).
class ChaoticFieldSampler {
public:
    ChaoticFieldSampler(const PolarizationState& pol, const CoherenceMatrix& gamma,
                        std::span<const double> intensities);

    std::size_t points() const noexcept { return scale_up_.size(); }

    /// Fills `up` and `down` (each of size points()).
    void sample(std::mt19937_64& rng, std::span<Complex> up, std::span<Complex> down) const;

private:
    void draw_component(std::mt19937_64& rng, std::span<const double> scale,
                        std::span<Complex> out) const;

    ComplexMatrix factor_;
    std::vector<double> scale_up_;
    std::vector<double> scale_down_;
};

/// Sample mean and standard error of prod_i (|up_i|^2 + |down_i|^2) over the
/// first k points.
MCEstimate mc_oracle_boson(const PolarizationState& pol, const CoherenceMatrix& gamma,
                           std::span<const double> intensities, std::size_t k,
                           const MCConfig& cfg);

}  // namespace polcorr

#endif  // POLCORR_ORACLES_HPP
