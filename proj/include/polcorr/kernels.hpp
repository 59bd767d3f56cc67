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

#ifndef POLCORR_KERNELS_HPP
#define POLCORR_KERNELS_HPP

#include "polcorr/core_types.hpp"

#include <cstddef>
#include <functional>
#include <span>

namespace polcorr {

/// Imaginary residue tolerated (relative to max(1, |value|)) before a
/// determinant or permanent of a Hermitian block is rejected as complex.
inline constexpr double kImagResidueTolerance = 1e-10;

/// Correlation function G of a fully polarized chaotic beam on a fermionic
/// beam: product of the one-particle intensities times det(gamma|subset).
double fermion_G(std::span<const std::size_t> subset, const CoherenceMatrix& gamma,
                 std::span<const double> intensities);

/// Bosonic counterpart: product of intensities times perm(gamma|subset).
double boson_G(std::span<const std::size_t> subset, const CoherenceMatrix& gamma,
               std::span<const double> intensities);

/// Maps a subset of detection points to the polarized correlation value G.
///
/// The empty subset evaluates to exactly 1 for every kernel, including custom
/// ones; the user evaluator is never called with an empty subset.
class PolarizedKernel {
public:
    using Evaluator = std::function<double(std::span<const std::size_t> subset,
                                           const CoherenceMatrix& gamma,
                                           std::span<const double> intensities)>;

    static PolarizedKernel fermion();
    static PolarizedKernel boson();
    static PolarizedKernel custom(Evaluator evaluator);
    /// Fermion or Boson; throws std::invalid_argument for Custom.
    static PolarizedKernel for_statistics(Statistics statistics);

    Statistics statistics() const noexcept { return statistics_; }

    double operator()(std::span<const std::size_t> subset, const CoherenceMatrix& gamma,
                      std::span<const double> intensities) const {
        if (subset.empty()) return 1.0;
        return evaluator_(subset, gamma, intensities);
    }

private:
    PolarizedKernel(Statistics statistics, Evaluator evaluator)
        : statistics_(statistics), evaluator_(std::move(evaluator)) {}

    Statistics statistics_;
    Evaluator evaluator_;
};

}  // namespace polcorr

#endif  // POLCORR_KERNELS_HPP
