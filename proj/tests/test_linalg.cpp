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

#include "polcorr/linalg.hpp"
#include "polcorr/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace polcorr {
namespace {

ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> normal;
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = {normal(rng), normal(rng)};
    return m;
}

double rel_gap(Complex a, Complex b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

TEST(Determinant, SmallExamples) {
    EXPECT_EQ(determinant(ComplexMatrix::identity(2)), Complex(1.0));
    EXPECT_EQ(determinant(ComplexMatrix(2, 1.0)), Complex(0.0));

    ComplexMatrix m(2, 1.0);
    m(0, 1) = m(1, 0) = 0.6;
    EXPECT_NEAR(std::abs(determinant(m) - 0.64), 0.0, 1e-15);
}

TEST(Determinant, EmptyMatrixIsOne) {
    EXPECT_EQ(determinant(ComplexMatrix{}), Complex(1.0));
    EXPECT_EQ(permanent(ComplexMatrix{}), Complex(1.0));
    EXPECT_EQ(determinant_naive(ComplexMatrix{}), Complex(1.0));
    EXPECT_EQ(permanent_naive(ComplexMatrix{}), Complex(1.0));
}

TEST(Permanent, SmallExamples) {
    EXPECT_EQ(permanent(ComplexMatrix::identity(3)), Complex(1.0));
    EXPECT_NEAR(std::abs(permanent(ComplexMatrix(3, 1.0)) - 6.0), 0.0, 1e-13);
}

TEST(Leibniz, TwoByTwoDefinition) {
    ComplexMatrix m(2);
    const Complex a{1.0, 2.0}, b{-0.5, 0.25}, c{3.0, -1.0}, d{0.5, 0.5};
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    EXPECT_EQ(determinant_naive(m), a * d - b * c);
    EXPECT_EQ(permanent_naive(m), a * d + b * c);
}

TEST(Leibniz, SizeCap) {
    EXPECT_THROW(determinant_naive(ComplexMatrix(kNaiveMaxOrder + 1)), std::length_error);
    EXPECT_THROW(permanent_naive(ComplexMatrix(kNaiveMaxOrder + 1)), std::length_error);
}

TEST(Permanent, SizeCap) {
    EXPECT_THROW(permanent(ComplexMatrix(kPermanentMaxOrder + 1)), std::length_error);
    EXPECT_THROW(permanent(ComplexMatrix(5), 4), std::length_error);
}

TEST(FastVsNaive, RandomComplexMatrices) {
    std::mt19937_64 rng(11);
    for (std::size_t n = 0; n <= 7; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto m = random_matrix(rng, n);
            EXPECT_LE(rel_gap(determinant(m), determinant_naive(m)), 1e-10) << "n=" << n;
            EXPECT_LE(rel_gap(permanent(m), permanent_naive(m)), 1e-10) << "n=" << n;
        }
    }
}

TEST(FastVsNaive, RandomFourByFourPermanentRelative) {
    std::mt19937_64 rng(4);
    const auto m = random_matrix(rng, 4);
    const Complex naive = permanent_naive(m);
    EXPECT_LE(std::abs(permanent(m) - naive) / std::abs(naive), 1e-12);
}

TEST(FastVsNaive, HermitianPsdFiveByFive) {
    std::mt19937_64 rng(5);
    const auto gamma = random_coherence_matrix(rng, 5, 5);
    const auto& m = gamma.entries();
    EXPECT_LE(rel_gap(determinant(m), determinant_naive(m)), 1e-10);
    EXPECT_LE(rel_gap(permanent(m), permanent_naive(m)), 1e-10);
}

TEST(HermitianPsd, DeterminantInUnitIntervalPermanentReal) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 8;
        const auto gamma = random_coherence_matrix(rng, n, 1 + (trial / 8) % (n + 1));
        const Complex det = determinant(gamma.entries());
        EXPECT_GE(det.real(), -1e-12);
        EXPECT_LE(det.real(), 1.0 + 1e-12);
        EXPECT_LE(std::abs(det.imag()), 1e-12 * std::max(1.0, std::abs(det)));

        const Complex perm = permanent(gamma.entries());
        EXPECT_GE(perm.real(), 0.0);
        EXPECT_LE(std::abs(perm.imag()), 1e-10);
    }
}

TEST(Multiplicativity, BlockDiagonal) {
    std::mt19937_64 rng(23);
    const auto a = random_matrix(rng, 3);
    const auto b = random_matrix(rng, 4);
    const auto ab = block_diagonal(a, b);
    EXPECT_LE(rel_gap(determinant(ab), determinant(a) * determinant(b)), 1e-12);
    EXPECT_LE(rel_gap(permanent(ab), permanent(a) * permanent(b)), 1e-12);
}

TEST(Cholesky, ReconstructsPositiveDefinite) {
    std::mt19937_64 rng(29);
    const auto gamma = random_coherence_matrix(rng, 5, 6);
    const auto l = cholesky(gamma.entries());
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            Complex s{};
            for (std::size_t k = 0; k < 5; ++k) s += l(i, k) * std::conj(l(j, k));
            EXPECT_LE(std::abs(s - gamma(i, j)), 1e-12);
        }
}

TEST(Cholesky, RankDeficientUsesJitter) {
    const auto l = cholesky(ComplexMatrix(3, 1.0));
    EXPECT_NEAR(l(2, 0).real(), 1.0, 1e-9);
}

TEST(Cholesky, IndefiniteThrows) {
    ComplexMatrix m = ComplexMatrix::identity(2);
    m(0, 1) = m(1, 0) = 1.5;
    EXPECT_THROW(cholesky(m), std::domain_error);
}

}  // namespace
}  // namespace polcorr
