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

#ifndef POLCORR_LINALG_HPP
#define POLCORR_LINALG_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace polcorr {

using Complex = std::complex<double>;

/// Largest order accepted by `permanent` (Ryser costs O(2^n n)).
inline constexpr std::size_t kPermanentMaxOrder = 25;
/// Largest order accepted by the Leibniz reference expansions (n! terms).
inline constexpr std::size_t kNaiveMaxOrder = 9;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t n, Complex fill = {});

    static ComplexMatrix identity(std::size_t n);

    std::size_t size() const noexcept { return n_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    std::span<const Complex> data() const noexcept { return data_; }

    /// Rows and columns picked by `index`, in that order.
    ComplexMatrix submatrix(std::span<const std::size_t> index) const;

    bool operator==(const ComplexMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix block_diagonal(const ComplexMatrix& a, const ComplexMatrix& b);

/// LU factorization with partial pivoting. Singular input yields 0; the
/// empty matrix yields 1.
Complex determinant(const ComplexMatrix& m);

/// Ryser's inclusion-exclusion formula, visiting column subsets in Gray-code
/// order so every step updates the row sums by a single column.
/// Throws std::length_error when the order exceeds `max_order`.
Complex permanent(const ComplexMatrix& m, std::size_t max_order = kPermanentMaxOrder);

// Leibniz expansions over all n! permutations. Reference oracles only.
Complex determinant_naive(const ComplexMatrix& m);
Complex permanent_naive(const ComplexMatrix& m);

/// Lower-triangular L with L L^H = a. Treats `a` as Hermitian and reads only
/// its lower triangle. If the plain factorization hits a non-positive pivot it
/// retries once with `max_jitter * max(1, max diag)` added to the diagonal;
/// failure after that throws std::domain_error.
ComplexMatrix cholesky(const ComplexMatrix& a, double max_jitter = 1e-12);

/// Smallest eigenvalue of a Hermitian matrix (self-adjoint eigensolver).
double min_eigenvalue_hermitian(const ComplexMatrix& a);

}  // namespace polcorr

#endif  // POLCORR_LINALG_HPP
