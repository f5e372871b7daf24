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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "lattice.hpp"

namespace qprice {

/// Dense N x N complex matrix acting on H, row-major, A(row, col).
class DenseOperator {
  public:
    explicit DenseOperator(std::size_t size) : size_(size), data_(size * size) {
        if (size == 0) throw DomainError("DenseOperator: size must be positive");
    }

    static DenseOperator identity(std::size_t size) {
        DenseOperator a(size);
        for (std::size_t i = 0; i < size; ++i) a(i, i) = 1.0;
        return a;
    }

    static DenseOperator diagonal(std::span<const Complex> d) {
        DenseOperator a(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) a(i, i) = d[i];
        return a;
    }

    std::size_t size() const noexcept { return size_; }

    Complex& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * size_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const noexcept { return data_[row * size_ + col]; }

    std::span<const Complex> row(std::size_t r) const noexcept { return {data_.data() + r * size_, size_}; }

    void apply(std::span<const Complex> in, std::span<Complex> out) const {
        detail::require_same_size(in.size(), size_, "DenseOperator::apply");
        detail::require_same_size(out.size(), size_, "DenseOperator::apply");
        for (std::size_t r = 0; r < size_; ++r) {
            const Complex* a = data_.data() + r * size_;
            Complex acc{0.0, 0.0};
            for (std::size_t c = 0; c < size_; ++c) acc += a[c] * in[c];
            out[r] = acc;
        }
    }

    LatticeFunction apply(const LatticeFunction& phi) const {
        std::vector<Complex> out(size_);
        apply(phi.values(), out);
        return LatticeFunction(std::move(out));
    }

    DenseOperator adjoint() const {
        DenseOperator out(size_);
        for (std::size_t r = 0; r < size_; ++r) {
            for (std::size_t c = 0; c < size_; ++c) out(c, r) = std::conj((*this)(r, c));
        }
        return out;
    }

    Complex trace() const noexcept {
        Complex acc{0.0, 0.0};
        for (std::size_t i = 0; i < size_; ++i) acc += (*this)(i, i);
        return acc;
    }

    double frobenius_norm() const noexcept {
        double acc = 0.0;
        for (const Complex& z : data_) acc += std::norm(z);
        return std::sqrt(acc);
    }

    double max_abs() const noexcept {
        double m = 0.0;
        for (const Complex& z : data_) m = std::max(m, std::abs(z));
        return m;
    }

    /// max |A - s A^dagger| over entries, s = +1 or -1.
    double adjoint_defect(double s) const noexcept {
        double m = 0.0;
        for (std::size_t r = 0; r < size_; ++r) {
            for (std::size_t c = r; c < size_; ++c) {
                m = std::max(m, std::abs((*this)(r, c) - s * std::conj((*this)(c, r))));
            }
        }
        return m;
    }

    /// A = A^dagger within `tol` times max(1, max|A_ij|).
    bool is_hermitian(double tol = 1e-12) const noexcept {
        return adjoint_defect(+1.0) <= tol * std::max(1.0, max_abs());
    }

    bool is_anti_hermitian(double tol = 1e-12) const noexcept {
        return adjoint_defect(-1.0) <= tol * std::max(1.0, max_abs());
    }

    friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
        detail::require_same_size(a.size_, b.size_, "DenseOperator product");
        const std::size_t n = a.size_;
        DenseOperator out(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex{}) continue;
                const Complex* brow = b.data_.data() + k * n;
                Complex* orow = out.data_.data() + i * n;
                for (std::size_t j = 0; j < n; ++j) orow[j] += aik * brow[j];
            }
        }
        return out;
    }

    friend DenseOperator operator-(const DenseOperator& a, const DenseOperator& b) {
        detail::require_same_size(a.size_, b.size_, "DenseOperator difference");
        DenseOperator out(a.size_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
        return out;
    }

    friend DenseOperator operator+(const DenseOperator& a, const DenseOperator& b) {
        detail::require_same_size(a.size_, b.size_, "DenseOperator sum");
        DenseOperator out(a.size_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] + b.data_[i];
        return out;
    }

    friend DenseOperator operator*(Complex s, const DenseOperator& a) {
        DenseOperator out(a);
        for (Complex& z : out.data_) z *= s;
        return out;
    }

  private:
    std::size_t size_;
    std::vector<Complex> data_;
};

} // namespace qprice
