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

#include "polcorr/partition.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

namespace polcorr {
namespace {

constexpr std::uint64_t kSumChunk = std::uint64_t{1} << 12;

void check_inputs(std::size_t k, const CoherenceMatrix& gamma, std::span<const double> intensities) {
    if (k < 1) throw std::domain_error("correlation order must be at least 1");
    if (k > kMaxCorrelationOrder)
        throw std::length_error("correlation order " + std::to_string(k) + " exceeds cap " +
                                std::to_string(kMaxCorrelationOrder));
    if (gamma.order() < k) throw std::invalid_argument("coherence matrix has fewer than k points");
    if (intensities.size() != gamma.order())
        throw std::invalid_argument("one intensity per coherence-matrix point is required");
}

// Kernel value for every subset of the first k points, indexed by bitmask.
std::vector<double> tabulate(std::size_t k, const PolarizedKernel& kernel,
                             const CoherenceMatrix& gamma, std::span<const double> intensities,
                             std::size_t workers) {
    const std::uint64_t count = std::uint64_t{1} << k;
    std::vector<double> table(count);
    auto fill = [&](std::uint64_t first, std::uint64_t stride) {
        std::vector<std::size_t> index;
        index.reserve(k);
        for (std::uint64_t mask = first; mask < count; mask += stride) {
            index.clear();
            for (std::size_t i = 0; i < k; ++i)
                if (mask >> i & 1u) index.push_back(i);
            table[mask] = kernel(index, gamma, intensities);
        }
    };

    workers = std::clamp<std::size_t>(workers, 1, count);
    if (workers == 1) {
        fill(0, 1);
        return table;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                try {
                    fill(w, workers);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return table;
}

// Terms are summed in index order within fixed-size chunks, then the chunk
// partials are summed in chunk order.
template <typename Term>
double chunked_sum(std::uint64_t count, Term&& term) {
    double total = 0.0;
    for (std::uint64_t begin = 0; begin < count; begin += kSumChunk) {
        const std::uint64_t end = std::min(count, begin + kSumChunk);
        double partial = 0.0;
        for (std::uint64_t i = begin; i < end; ++i) partial += term(i);
        total += partial;
    }
    return total;
}

double grouped_coefficient(std::size_t a, std::size_t b, const PolarizationState& pol) {
    const double r1 = pol.rho_up();
    const double r2 = pol.rho_down();
    return std::pow(r1, static_cast<double>(a)) * std::pow(r2, static_cast<double>(b)) +
           std::pow(r1, static_cast<double>(b)) * std::pow(r2, static_cast<double>(a));
}

}  // namespace

std::string_view to_string(Method m) {
    switch (m) {
        case Method::Enumeration: return "enumeration";
        case Method::Grouped: return "grouped";
        case Method::TwoParticleClosedForm: return "two-particle";
    }
    return "unknown";
}

PartitionTerm make_partition_term(std::uint32_t subset_up, std::size_t k,
                                  const PolarizationState& pol) {
    if (k > kMaxCorrelationOrder) throw std::length_error("partition term order exceeds cap");
    if (k < 32 && (subset_up >> k) != 0) throw std::out_of_range("subset has points beyond k");
    PartitionTerm t;
    t.subset_up = subset_up;
    t.n_up = static_cast<std::size_t>(std::popcount(subset_up));
    t.n_down = k - t.n_up;
    t.weight = std::pow(pol.rho_up(), static_cast<double>(t.n_up)) *
               std::pow(pol.rho_down(), static_cast<double>(t.n_down));
    return t;
}

std::vector<GroupedTerm> grouped_terms(std::size_t k, const PolarizationState& pol) {
    if (k < 1 || k > kMaxCorrelationOrder) throw std::length_error("grouped order out of range");
    const std::uint64_t count = std::uint64_t{1} << (k - 1);
    std::vector<GroupedTerm> terms;
    terms.reserve(count);
    for (std::uint64_t r = 0; r < count; ++r) {
        const auto subset = static_cast<std::uint32_t>(r << 1 | 1u);
        const auto a = static_cast<std::size_t>(std::popcount(subset));
        terms.push_back({subset, grouped_coefficient(a, k - a, pol)});
    }
    return terms;
}

CorrelationResult correlation_enumeration(std::size_t k, const PolarizationState& pol,
                                          const PolarizedKernel& kernel,
                                          const CoherenceMatrix& gamma,
                                          std::span<const double> intensities,
                                          EngineOptions options) {
    check_inputs(k, gamma, intensities);
    const auto table = tabulate(k, kernel, gamma, intensities, options.workers);
    const std::uint64_t count = std::uint64_t{1} << k;
    const std::uint64_t all = count - 1;
    const double value = chunked_sum(count, [&](std::uint64_t mask) {
        const auto term = make_partition_term(static_cast<std::uint32_t>(mask), k, pol);
        return term.weight * table[mask] * table[all ^ mask];
    });
    return {value, k, Method::Enumeration, kernel.statistics(), count};
}

CorrelationResult correlation_grouped(std::size_t k, const PolarizationState& pol,
                                      const PolarizedKernel& kernel,
                                      const CoherenceMatrix& gamma,
                                      std::span<const double> intensities,
                                      EngineOptions options) {
    check_inputs(k, gamma, intensities);
    const auto table = tabulate(k, kernel, gamma, intensities, options.workers);
    const auto terms = grouped_terms(k, pol);
    const std::uint64_t all = (std::uint64_t{1} << k) - 1;
    const double value = chunked_sum(terms.size(), [&](std::uint64_t i) {
        const GroupedTerm& t = terms[i];
        return t.coefficient * table[t.subset] * table[all ^ t.subset];
    });
    return {value, k, Method::Grouped, kernel.statistics(), terms.size()};
}

double two_particle_closed_form(const PolarizationState& pol, double gamma12_abs2, double I1,
                                double I2, Statistics statistics) {
    if (!(gamma12_abs2 >= 0.0 && gamma12_abs2 <= 1.0))
        throw std::domain_error("|gamma12|^2 must lie in [0, 1]");
    if (!(I1 >= 0.0 && I2 >= 0.0) || !std::isfinite(I1) || !std::isfinite(I2))
        throw std::domain_error("intensities must be finite and non-negative");
    const double P = pol.degree();
    const double strength = (1.0 + P * P) / 2.0 * gamma12_abs2;
    switch (statistics) {
        case Statistics::Fermion: return I1 * I2 * (1.0 - strength);
        case Statistics::Boson: return I1 * I2 * (1.0 + strength);
        case Statistics::Custom: break;
    }
    throw std::domain_error("two-particle closed form exists for fermions and bosons only");
}

double weight_factor(int k, double P) {
    if (k < 1) throw std::domain_error("weight factor needs k >= 1");
    const auto [r1, r2] = rho_from_P(P);
    return std::pow(r1, k) + std::pow(r2, k);
}

}  // namespace polcorr
