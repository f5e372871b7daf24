// Copyright 2026 The qprice Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Cyclic Jacobi diagonalization of a complex Hermitian matrix.
//
// Each (p, q) rotation first removes the phase of a_pq with a diagonal
// unitary diag(1, conj(e^{i phi})), which makes the 2x2 block real
// symmetric, and then applies the usual real Jacobi rotation
//
//   t = sgn(theta) / (|theta| + sqrt(theta^2 + 1)),  theta = (a_qq - a_pp) / (2 |a_pq|)
//
// so the combined unitary in the (p, q) plane is
//
//   U = [ c              s             ]
//       [ -s conj(e)     c conj(e)     ],  c = 1/sqrt(1+t^2), s = t c.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "dense_operator.hpp"

namespace qprice {

struct JacobiOptions {
    /// Stop when the off-diagonal Frobenius mass drops below tolerance * ||A||_F.
    double tolerance = 1e-13;
    int max_sweeps = 100;
};

struct EigenDecomposition {
    std::vector<double> values; ///< ascending
    DenseOperator vectors;      ///< column j is the eigenvector of values[j]
    int sweeps = 0;
};

namespace detail {

inline double off_diagonal_mass(const DenseOperator& a) {
    double acc = 0.0;
    const std::size_t n = a.size();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (r != c) acc += std::norm(a(r, c));
        }
    }
    return std::sqrt(acc);
}

inline void jacobi_rotate(DenseOperator& a, DenseOperator& v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double g = std::abs(apq);
    if (g == 0.0) return;
    const Complex e = apq / g;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double theta = (aqq - app) / (2.0 * g);
    double t = 1.0 / (std::abs(theta) + std::hypot(theta, 1.0));
    if (theta < 0.0) t = -t;
    const double c = 1.0 / std::hypot(t, 1.0);
    const double s = t * c;

    const Complex upp = c;
    const Complex upq = s;
    const Complex uqp = -s * std::conj(e);
    const Complex uqq = c * std::conj(e);

    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Complex x = a(k, p);
        const Complex y = a(k, q);
        a(k, p) = x * upp + y * uqp;
        a(k, q) = x * upq + y * uqq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex x = a(p, k);
        const Complex y = a(q, k);
        a(p, k) = std::conj(upp) * x + std::conj(uqp) * y;
        a(q, k) = std::conj(upq) * x + std::conj(uqq) * y;
    }
    a(p, p) = app - t * g;
    a(q, q) = aqq + t * g;
    a(p, q) = 0.0;
    a(q, p) = 0.0;

    for (std::size_t k = 0; k < n; ++k) {
        const Complex x = v(k, p);
        const Complex y = v(k, q);
        v(k, p) = x * upp + y * uqp;
        v(k, q) = x * upq + y * uqq;
    }
}

} // namespace detail

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.
/// Throws ContractError for non-Hermitian input and ConvergenceError when the
/// sweep cap is reached first.
inline EigenDecomposition hermitian_eigen(const DenseOperator& h, const JacobiOptions& opts = {}) {
    if (!h.is_hermitian(1e-10)) throw ContractError("hermitian_eigen: matrix is not Hermitian");
    const std::size_t n = h.size();

    // Symmetrize so the diagonal is exactly real and a(q,p) == conj(a(p,q)).
    DenseOperator a(n);
    for (std::size_t r = 0; r < n; ++r) {
        a(r, r) = h(r, r).real();
        for (std::size_t c = r + 1; c < n; ++c) {
            const Complex z = 0.5 * (h(r, c) + std::conj(h(c, r)));
            a(r, c) = z;
            a(c, r) = std::conj(z);
        }
    }
    DenseOperator v = DenseOperator::identity(n);

    const double scale = a.frobenius_norm();
    int sweeps = 0;
    while (detail::off_diagonal_mass(a) > opts.tolerance * scale) {
        if (sweeps == opts.max_sweeps) {
            throw ConvergenceError("hermitian_eigen: no convergence after " + std::to_string(sweeps) + " sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q);
        }
        ++sweeps;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition out{std::vector<double>(n), DenseOperator(n), sweeps};
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]).real();
        for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
    }
    return out;
}

} // namespace qprice
