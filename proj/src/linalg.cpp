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

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace polcorr {

ComplexMatrix::ComplexMatrix(std::size_t n, Complex fill) : n_(n), data_(n * n, fill) {}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::submatrix(std::span<const std::size_t> index) const {
    ComplexMatrix out(index.size());
    for (std::size_t i = 0; i < index.size(); ++i) {
        if (index[i] >= n_) throw std::out_of_range("submatrix: index out of range");
        for (std::size_t j = 0; j < index.size(); ++j) out(i, j) = (*this)(index[i], index[j]);
    }
    return out;
}

ComplexMatrix block_diagonal(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.size();
    ComplexMatrix out(na + b.size());
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out(na + i, na + j) = b(i, j);
    return out;
}

Complex determinant(const ComplexMatrix& m) {
    const std::size_t n = m.size();
    ComplexMatrix lu = m;
    Complex det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(lu(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(lu(r, col));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) return 0.0;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(col, j), lu(pivot, j));
            det = -det;
        }
        const Complex diag = lu(col, col);
        det *= diag;
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex factor = lu(r, col) / diag;
            if (factor == Complex{}) continue;
            for (std::size_t j = col + 1; j < n; ++j) lu(r, j) -= factor * lu(col, j);
        }
    }
    return det;
}

Complex permanent(const ComplexMatrix& m, std::size_t max_order) {
    const std::size_t n = m.size();
    if (n > max_order)
        throw std::length_error("permanent: order " + std::to_string(n) + " exceeds cap " +
                                std::to_string(max_order));
    if (n == 0) return 1.0;

    // perm(A) = (-1)^n sum_{S} (-1)^{|S|} prod_i sum_{j in S} a_ij
    // The alternating sum cancels heavily, so it is accumulated in extended precision.
    using Wide = std::complex<long double>;
    std::vector<Wide> row_sums(n, Wide{});
    Wide total{};
    std::uint64_t gray = 0;
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t step = 1; step < count; ++step) {
        const auto col = static_cast<std::size_t>(std::countr_zero(step));
        const std::uint64_t bit = std::uint64_t{1} << col;
        gray ^= bit;
        if (gray & bit) {
            for (std::size_t i = 0; i < n; ++i) row_sums[i] += Wide(m(i, col));
        } else {
            for (std::size_t i = 0; i < n; ++i) row_sums[i] -= Wide(m(i, col));
        }
        Wide prod = 1.0L;
        for (const Wide& s : row_sums) prod *= s;
        if (std::popcount(gray) % 2 == 1)
            total -= prod;
        else
            total += prod;
    }
    if (n % 2 == 1) total = -total;
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

namespace {

void check_naive_order(std::size_t n) {
    if (n > kNaiveMaxOrder)
        throw std::length_error("naive expansion: order " + std::to_string(n) + " exceeds cap " +
                                std::to_string(kNaiveMaxOrder));
}

template <bool Signed>
Complex leibniz(const ComplexMatrix& m) {
    const std::size_t n = m.size();
    check_naive_order(n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Complex total{};
    do {
        Complex prod = 1.0;
        for (std::size_t i = 0; i < n; ++i) prod *= m(i, perm[i]);
        if constexpr (Signed) {
            std::size_t inversions = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (perm[i] > perm[j]) ++inversions;
            if (inversions % 2 == 1) prod = -prod;
        }
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

std::optional<ComplexMatrix> try_cholesky(const ComplexMatrix& a, double shift) {
    const std::size_t n = a.size();
    ComplexMatrix l(n);
    for (std::size_t j = 0; j < n; ++j) {
        double pivot = a(j, j).real() + shift;
        for (std::size_t k = 0; k < j; ++k) pivot -= std::norm(l(j, k));
        if (!(pivot > 0.0)) return std::nullopt;
        const double diag = std::sqrt(pivot);
        l(j, j) = diag;
        for (std::size_t i = j + 1; i < n; ++i) {
            Complex s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / diag;
        }
    }
    return l;
}

}  // namespace

Complex determinant_naive(const ComplexMatrix& m) { return leibniz<true>(m); }

Complex permanent_naive(const ComplexMatrix& m) { return leibniz<false>(m); }

ComplexMatrix cholesky(const ComplexMatrix& a, double max_jitter) {
    if (auto l = try_cholesky(a, 0.0)) return *l;
    double scale = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) scale = std::max(scale, a(i, i).real());
    if (auto l = try_cholesky(a, max_jitter * scale)) return *l;
    throw std::domain_error("cholesky: matrix is not positive semidefinite within jitter tolerance");
}

double min_eigenvalue_hermitian(const ComplexMatrix& a) {
    const auto n = static_cast<Eigen::Index>(a.size());
    if (n == 0) return 0.0;
    Eigen::MatrixXcd dense(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            dense(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace polcorr
