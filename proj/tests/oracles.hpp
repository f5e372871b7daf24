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

// Reference computations used only by the tests. None of these go through
// the library's transform plans, theta truncation or eigensolver.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "qprice/dense_operator.hpp"
#include "qprice/lattice.hpp"

namespace oracle {

using qprice::Complex;
using CVec = std::vector<Complex>;

/// sum_n exp(sign 2 pi i k n / N) x(n) / sqrt(N), angle taken straight from k*n.
inline CVec dft(const CVec& x, int sign) {
    const std::size_t n = x.size();
    CVec out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc{};
        for (std::size_t j = 0; j < n; ++j) {
            const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) * static_cast<double>(j) /
                                 static_cast<double>(n);
            acc += std::polar(1.0, angle) * x[j];
        }
        out[k] = acc / std::sqrt(static_cast<double>(n));
    }
    return out;
}

/// theta_3(z, i t) from the complex series over a in [-terms, terms].
inline double theta3_direct(double z, double t, int terms = 50) {
    Complex acc{};
    for (int a = -terms; a <= terms; ++a) {
        acc += std::exp(-std::numbers::pi * t * a * a) * std::polar(1.0, 2.0 * std::numbers::pi * a * z);
    }
    return acc.real();
}

/// gamma_kappa(n) with m in [-terms, terms].
inline std::vector<double> gamma_direct(double kappa, std::size_t size, int terms) {
    const double nd = static_cast<double>(size);
    std::vector<double> out(size);
    for (std::size_t n = 0; n < size; ++n) {
        double acc = 0.0;
        for (int m = -terms; m <= terms; ++m) {
            const double x = m * nd + static_cast<double>(n);
            acc += std::exp(-kappa * std::numbers::pi / nd * x * x);
        }
        out[n] = acc;
    }
    return out;
}

inline qprice::DenseOperator matmul(const qprice::DenseOperator& a, const qprice::DenseOperator& b) {
    const std::size_t n = a.size();
    qprice::DenseOperator out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc{};
            for (std::size_t k = 0; k < n; ++k) acc += a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    }
    return out;
}

/// Characteristic polynomial coefficients c_0..c_n (c_n = 1) by
/// Faddeev-LeVerrier.
inline CVec char_poly(const qprice::DenseOperator& a) {
    const std::size_t n = a.size();
    CVec c(n + 1);
    c[n] = 1.0;
    qprice::DenseOperator m(n); // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        qprice::DenseOperator am = matmul(a, m);
        for (std::size_t i = 0; i < n; ++i) am(i, i) += c[n - k + 1];
        m = am;
        const qprice::DenseOperator amk = matmul(a, m);
        c[n - k] = -amk.trace() / static_cast<double>(k);
    }
    return c;
}

/// Roots of a monic polynomial by Durand-Kerner iteration.
inline CVec poly_roots(const CVec& c) {
    const std::size_t n = c.size() - 1;
    CVec z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(Complex(0.4, 0.9), static_cast<double>(i));
    auto eval = [&](Complex x) {
        Complex acc = c[n];
        for (std::size_t k = n; k-- > 0;) acc = acc * x + c[k];
        return acc;
    };
    for (int it = 0; it < 2000; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            Complex den = 1.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) den *= z[i] - z[j];
            }
            z[i] -= eval(z[i]) / den;
        }
    }
    return z;
}

/// exp(-i d H) by scaling and squaring of a Taylor series.
inline qprice::DenseOperator expm_minus_i(const qprice::DenseOperator& h, double d) {
    const std::size_t n = h.size();
    const double scale = std::max(1.0, h.frobenius_norm() * std::abs(d));
    int squarings = 0;
    while (std::ldexp(1.0, squarings) < 4.0 * scale) ++squarings;
    const double tau = d / std::ldexp(1.0, squarings);
    const qprice::DenseOperator a = Complex(0.0, -tau) * h;
    qprice::DenseOperator sum = qprice::DenseOperator::identity(n);
    qprice::DenseOperator term = qprice::DenseOperator::identity(n);
    for (int k = 1; k <= 30; ++k) {
        term = Complex(1.0 / k, 0.0) * matmul(term, a);
        sum = sum + term;
    }
    for (int s = 0; s < squarings; ++s) sum = matmul(sum, sum);
    return sum;
}

inline double max_abs_diff(const CVec& a, const CVec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs_diff(const qprice::DenseOperator& a, const qprice::DenseOperator& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    }
    return m;
}

/// Complex Gaussian amplitudes.
inline CVec random_vector(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> g;
    CVec v(n);
    for (auto& z : v) z = {g(rng), g(rng)};
    return v;
}

inline qprice::NormalizedState random_state(std::mt19937_64& rng, std::size_t n) {
    return qprice::normalize(qprice::LatticeFunction(random_vector(rng, n)));
}

inline qprice::DenseOperator random_hermitian(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> g;
    qprice::DenseOperator h(n);
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = g(rng);
        for (std::size_t j = i + 1; j < n; ++j) {
            h(i, j) = {g(rng), g(rng)};
            h(j, i) = std::conj(h(i, j));
        }
    }
    return h;
}

} // namespace oracle
