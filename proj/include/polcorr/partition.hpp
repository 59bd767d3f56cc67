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

#ifndef POLCORR_PARTITION_HPP
#define POLCORR_PARTITION_HPP

#include "polcorr/core_types.hpp"
#include "polcorr/kernels.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace polcorr {

/// Largest correlation order accepted by the partition sums (2^k subsets).
inline constexpr std::size_t kMaxCorrelationOrder = 20;

enum class Method { Enumeration, Grouped, TwoParticleClosedForm };

std::string_view to_string(Method m);

/// One spin assignment of k detected particles: bit i of `subset_up` set means
/// the particle at point i came from the "up" component.
struct PartitionTerm {
    std::uint32_t subset_up = 0;
    std::size_t n_up = 0;
    std::size_t n_down = 0;
    double weight = 0.0;  // rho_up^n_up * rho_down^n_down
};

PartitionTerm make_partition_term(std::uint32_t subset_up, std::size_t k,
                                  const PolarizationState& pol);

/// One unordered split {S, complement of S} of the grouped sum, represented by
/// the member containing point 0.
struct GroupedTerm {
    std::uint32_t subset = 0;
    double coefficient = 0.0;  // rho_up^a rho_down^b + rho_up^b rho_down^a
};

/// All 2^(k-1) grouped terms in canonical (binary counting) order.
std::vector<GroupedTerm> grouped_terms(std::size_t k, const PolarizationState& pol);

struct CorrelationResult {
    double value = 0.0;
    std::size_t order = 0;
    Method method = Method::Enumeration;
    Statistics statistics = Statistics::Fermion;
    std::uint64_t term_count = 0;
};

struct EngineOptions {
    /// Threads used to tabulate the kernel over subsets. The result does not
    /// depend on this: partial sums are always formed over fixed chunks and
    /// reduced in chunk order.
    std::size_t workers = 1;
};

/// Correlation function of the partially polarized beam at the first k points
/// of `gamma`, summing every spin assignment:
///   O = sum_S rho_up^|S| rho_down^(k-|S|) G(S) G(complement of S).
CorrelationResult correlation_enumeration(std::size_t k, const PolarizationState& pol,
                                          const PolarizedKernel& kernel,
                                          const CoherenceMatrix& gamma,
                                          std::span<const double> intensities,
                                          EngineOptions options = {});

/// Same quantity, with each assignment paired with its spin-flipped partner so
/// every unordered split {S, S^c} is visited once with the symmetric
/// coefficient (rho_up^a rho_down^b + rho_up^b rho_down^a).
CorrelationResult correlation_grouped(std::size_t k, const PolarizationState& pol,
                                      const PolarizedKernel& kernel,
                                      const CoherenceMatrix& gamma,
                                      std::span<const double> intensities,
                                      EngineOptions options = {});

/// I1 I2 (1 -/+ (1+P^2)/2 |gamma12|^2) for fermions (-) and bosons (+).
double two_particle_closed_form(const PolarizationState& pol, double gamma12_abs2, double I1,
                                double I2, Statistics statistics);

/// w = rho_up^k + rho_down^k, the surviving strength of the full k-particle term.
double weight_factor(int k, double P);

}  // namespace polcorr

#endif  // POLCORR_PARTITION_HPP
