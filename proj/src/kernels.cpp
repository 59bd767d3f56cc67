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

#include "polcorr/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace polcorr {
namespace {

void check_arguments(std::span<const std::size_t> subset, const CoherenceMatrix& gamma,
                     std::span<const double> intensities) {
    const std::size_t k = gamma.order();
    if (intensities.size() != k)
        throw std::invalid_argument("one intensity per coherence-matrix point is required");
    std::vector<bool> seen(k, false);
    for (std::size_t idx : subset) {
        if (idx >= k) throw std::out_of_range("subset index out of range");
        if (seen[idx]) throw std::out_of_range("duplicate subset index");
        seen[idx] = true;
    }
    for (double I : intensities)
        if (!std::isfinite(I) || I < 0.0) throw std::invalid_argument("intensities must be >= 0");
}

double clamp_real(Complex value, const char* what) {
    if (std::abs(value.imag()) > kImagResidueTolerance * std::max(1.0, std::abs(value)))
        throw std::domain_error(std::string(what) + " of a Hermitian block has a large imaginary part");
    return value.real();
}

double intensity_product(std::span<const std::size_t> subset, std::span<const double> intensities) {
    double prod = 1.0;
    for (std::size_t idx : subset) prod *= intensities[idx];
    return prod;
}

// Sorting makes the result exactly invariant under reordering of the subset.
std::vector<std::size_t> canonical(std::span<const std::size_t> subset) {
    std::vector<std::size_t> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    return sorted;
}

}  // namespace

double fermion_G(std::span<const std::size_t> subset, const CoherenceMatrix& gamma,
                 std::span<const double> intensities) {
    check_arguments(subset, gamma, intensities);
    if (subset.empty()) return 1.0;
    const auto index = canonical(subset);
    const double det = clamp_real(determinant(gamma.restricted(index)), "determinant");
    return intensity_product(index, intensities) * det;
}

double boson_G(std::span<const std::size_t> subset, const CoherenceMatrix& gamma,
               std::span<const double> intensities) {
    check_arguments(subset, gamma, intensities);
    if (subset.empty()) return 1.0;
    const auto index = canonical(subset);
    const double perm = clamp_real(permanent(gamma.restricted(index)), "permanent");
    return intensity_product(index, intensities) * perm;
}

PolarizedKernel PolarizedKernel::fermion() { return {Statistics::Fermion, &fermion_G}; }

PolarizedKernel PolarizedKernel::boson() { return {Statistics::Boson, &boson_G}; }

PolarizedKernel PolarizedKernel::custom(Evaluator evaluator) {
    if (!evaluator) throw std::invalid_argument("custom kernel needs an evaluator");
    return {Statistics::Custom, std::move(evaluator)};
}

PolarizedKernel PolarizedKernel::for_statistics(Statistics statistics) {
    switch (statistics) {
        case Statistics::Fermion: return fermion();
        case Statistics::Boson: return boson();
        case Statistics::Custom: break;
    }
    throw std::invalid_argument("custom kernels need an explicit evaluator");
}

}  // namespace polcorr
