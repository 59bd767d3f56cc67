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

#include "polcorr/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace polcorr {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Welford accumulator; chunks are merged with the pairwise update.
struct Moments {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    void merge(const Moments& other) {
        if (other.n == 0) return;
        const double na = static_cast<double>(n);
        const double nb = static_cast<double>(other.n);
        const double delta = other.mean - mean;
        const double total = na + nb;
        mean += delta * nb / total;
        m2 += other.m2 + delta * delta * na * nb / total;
        n += other.n;
    }
};

}  // namespace

void ModeBasis::validate(Statistics statistics) const {
    if (occupations.empty()) throw std::invalid_argument("mode basis needs at least one mode");
    if (modes() > kFockMaxModes)
        throw std::length_error("mode basis exceeds " + std::to_string(kFockMaxModes) + " modes");
    for (double occ : occupations) {
        if (!std::isfinite(occ) || occ < 0.0)
            throw std::invalid_argument("mode occupations must be finite and non-negative");
        if (statistics == Statistics::Fermion && occ > 1.0)
            throw std::invalid_argument("fermion mode occupations must lie in [0, 1]");
    }
    for (const auto& row : amplitudes)
        if (row.size() != modes())
            throw std::invalid_argument("each detection point needs one amplitude per mode");
}

DerivedCoherence derive_coherence(const ModeBasis& basis) {
    const std::size_t n = basis.points();
    ComplexMatrix raw(n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            Complex s{};
            for (std::size_t j = 0; j < basis.modes(); ++j)
                s += basis.occupations[j] * basis.amplitudes[p][j] * std::conj(basis.amplitudes[q][j]);
            raw(p, q) = s;
        }
    DerivedCoherence out;
    out.intensities.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        out.intensities[p] = raw(p, p).real();
        if (!(out.intensities[p] > 0.0))
            throw std::invalid_argument("detection point has zero intensity; coherence undefined");
    }
    ComplexMatrix gamma(n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            gamma(p, q) = p == q ? Complex{1.0, 0.0}
                                 : raw(p, q) / std::sqrt(out.intensities[p] * out.intensities[q]);
    out.gamma = CoherenceMatrix::from_entries(std::move(gamma));
    return out;
}

double fock_oracle_fermion(const ModeBasis& basis, std::span<const std::size_t> points) {
    basis.validate(Statistics::Fermion);
    if (points.size() > kFockMaxOrder)
        throw std::length_error("Fock oracle supports at most " + std::to_string(kFockMaxOrder) +
                                " points");
    for (std::size_t p : points)
        if (p >= basis.points()) throw std::out_of_range("Fock oracle point index out of range");

    const std::size_t M = basis.modes();
    const std::size_t dim = std::size_t{1} << M;
    std::vector<Complex> state(dim), next(dim);
    double total = 0.0;

    for (std::size_t config = 0; config < dim; ++config) {
        double weight = 1.0;
        for (std::size_t j = 0; j < M; ++j) {
            const double occ = basis.occupations[j];
            weight *= (config >> j & 1u) ? occ : 1.0 - occ;
        }
        if (weight == 0.0) continue;

        std::fill(state.begin(), state.end(), Complex{});
        state[config] = 1.0;
        // psi(p_k) ... psi(p_1) |config>, applying psi(p_1) first.
        for (std::size_t p : points) {
            std::fill(next.begin(), next.end(), Complex{});
            for (std::size_t occ = 0; occ < dim; ++occ) {
                if (state[occ] == Complex{}) continue;
                for (std::size_t j = 0; j < M; ++j) {
                    if (!(occ >> j & 1u)) continue;
                    const std::size_t below = occ & ((std::size_t{1} << j) - 1);
                    const double sign = std::popcount(below) % 2 == 0 ? 1.0 : -1.0;
                    next[occ ^ (std::size_t{1} << j)] += sign * basis.amplitudes[p][j] * state[occ];
                }
            }
            std::swap(state, next);
        }
        double norm2 = 0.0;
        for (const Complex& c : state) norm2 += std::norm(c);
        total += weight * norm2;
    }
    return total;
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t chunk) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(chunk + 0x632be59bd9b4e019ULL)));
}

CoherenceMatrix random_coherence_matrix(std::mt19937_64& rng, std::size_t k, std::size_t dim) {
    if (dim < 1) throw std::invalid_argument("random coherence matrix needs dim >= 1");
    std::normal_distribution<double> normal;
    std::vector<std::vector<Complex>> vecs(k, std::vector<Complex>(dim));
    for (auto& v : vecs) {
        double norm2 = 0.0;
        for (auto& c : v) {
            c = {normal(rng), normal(rng)};
            norm2 += std::norm(c);
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& c : v) c *= inv;
    }
    ComplexMatrix m(k);
    for (std::size_t i = 0; i < k; ++i) {
        m(i, i) = 1.0;
        for (std::size_t j = i + 1; j < k; ++j) {
            Complex s{};
            for (std::size_t d = 0; d < dim; ++d) s += vecs[i][d] * std::conj(vecs[j][d]);
            m(i, j) = s;
            m(j, i) = std::conj(s);
        }
    }
    return CoherenceMatrix::from_entries(std::move(m));
}

ChaoticFieldSampler::ChaoticFieldSampler(const PolarizationState& pol, const CoherenceMatrix& gamma,
                                         std::span<const double> intensities)
    : factor_(cholesky(gamma.entries())) {
    if (intensities.size() != gamma.order())
        throw std::invalid_argument("one intensity per coherence-matrix point is required");
    for (double I : intensities) {
        if (!std::isfinite(I) || I < 0.0) throw std::invalid_argument("intensities must be >= 0");
        scale_up_.push_back(std::sqrt(pol.rho_up() * I));
        scale_down_.push_back(std::sqrt(pol.rho_down() * I));
    }
}

void ChaoticFieldSampler::draw_component(std::mt19937_64& rng, std::span<const double> scale,
                                         std::span<Complex> out) const {
    const std::size_t n = points();
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    for (std::size_t i = 0; i < n; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        out[i] = {re, im};
    }
    // out <- L * out, bottom row first so unread entries stay white.
    for (std::size_t i = n; i-- > 0;) {
        Complex s{};
        for (std::size_t j = 0; j <= i; ++j) s += factor_(i, j) * out[j];
        out[i] = scale[i] * s;
    }
}

void ChaoticFieldSampler::sample(std::mt19937_64& rng, std::span<Complex> up,
                                 std::span<Complex> down) const {
    if (up.size() != points() || down.size() != points())
        throw std::invalid_argument("sample buffers must match the number of points");
    draw_component(rng, scale_up_, up);
    draw_component(rng, scale_down_, down);
}

MCEstimate mc_oracle_boson(const PolarizationState& pol, const CoherenceMatrix& gamma,
                           std::span<const double> intensities, std::size_t k,
                           const MCConfig& cfg) {
    if (k < 1 || k > kMcMaxOrder)
        throw std::length_error("Monte Carlo oracle supports 1 <= k <= " +
                                std::to_string(kMcMaxOrder));
    if (gamma.order() < k) throw std::invalid_argument("coherence matrix has fewer than k points");
    if (intensities.size() < k) throw std::invalid_argument("fewer intensities than points");
    if (cfg.samples < 2) throw std::invalid_argument("Monte Carlo needs at least two samples");
    if (cfg.workers < 1) throw std::invalid_argument("Monte Carlo needs at least one worker");

    std::vector<std::size_t> first(k);
    std::iota(first.begin(), first.end(), 0);
    const auto sub = CoherenceMatrix::from_entries(gamma.restricted(first));
    const ChaoticFieldSampler sampler(pol, sub, intensities.first(k));

    const std::uint64_t chunks = (cfg.samples + kMcChunkSamples - 1) / kMcChunkSamples;
    std::vector<Moments> partial(chunks);

    auto run_chunk = [&](std::uint64_t c) {
        auto rng = make_stream(cfg.seed, c);
        const std::uint64_t n = std::min(kMcChunkSamples, cfg.samples - c * kMcChunkSamples);
        std::vector<Complex> up(k), down(k);
        Moments m;
        for (std::uint64_t s = 0; s < n; ++s) {
            sampler.sample(rng, up, down);
            double prod = 1.0;
            for (std::size_t i = 0; i < k; ++i) prod *= std::norm(up[i]) + std::norm(down[i]);
            m.add(prod);
        }
        partial[c] = m;
    };

    const std::size_t workers = std::min<std::uint64_t>(cfg.workers, chunks);
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> threads;
            for (std::size_t w = 0; w < workers; ++w)
                threads.emplace_back([&, w] {
                    try {
                        for (std::uint64_t c = w; c < chunks; c += workers) run_chunk(c);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
        }
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    Moments total;
    for (const Moments& m : partial) total.merge(m);
    const double n = static_cast<double>(total.n);
    const double variance = total.m2 / (n - 1.0);
    return {total.mean, std::sqrt(variance / n), total.n};
}

}  // namespace polcorr
