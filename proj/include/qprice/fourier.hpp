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

// Unitary finite Fourier transform on Z_N:
//
//   F[phi](k)     = N^{-1/2} sum_n exp(-2 pi i k n / N) phi(n)
//   F^{-1}[psi](n) = N^{-1/2} sum_k exp(+2 pi i k n / N) psi(k)
//
// Both directions carry the 1/sqrt(N) factor. Small N uses the defining sum;
// larger N goes through Bluestein's chirp-z reduction to a power-of-two
// cyclic convolution, which works for every N including primes.

#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "lattice.hpp"

namespace qprice {

enum class Direction { forward, inverse };

enum class Algorithm {
    automatic, ///< naive up to kNaiveMaxSize, Bluestein above
    naive,
    bluestein
};

inline constexpr std::size_t kNaiveMaxSize = 32;

namespace detail {

/// exp(sign * 2 pi i * num / den) with num reduced into [-den/2, den/2]
/// before the multiplication by 2 pi, so the trig argument stays in [-pi, pi].
inline Complex unit_root(std::uint64_t num, std::uint64_t den, int sign) {
    num %= den;
    const double reduced = (2 * num > den) ? -static_cast<double>(den - num) : static_cast<double>(num);
    const double angle = sign * 2.0 * std::numbers::pi * reduced / static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
}

/// In-place iterative radix-2 FFT, e^{-2 pi i jk/M} kernel, no scaling.
/// `twiddles` holds exp(-2 pi i j / M) for j < M/2.
inline void fft_radix2(std::span<Complex> a, std::span<const Complex> twiddles) {
    const std::size_t m = a.size();
    for (std::size_t i = 1, j = 0; i < m; ++i) {
        std::size_t bit = m >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= m; len <<= 1) {
        const std::size_t half = len >> 1;
        const std::size_t stride = m / len;
        for (std::size_t start = 0; start < m; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const Complex t = twiddles[k * stride] * a[start + k + half];
                const Complex u = a[start + k];
                a[start + k] = u + t;
                a[start + k + half] = u - t;
            }
        }
    }
}

} // namespace detail

/// Precomputed transform of fixed size and direction. Immutable after
/// construction, so one plan can be shared between threads.
class FourierPlan {
  public:
    FourierPlan(std::size_t size, Direction direction, Algorithm algorithm = Algorithm::automatic)
        : size_(size), direction_(direction), scale_(1.0 / std::sqrt(static_cast<double>(size))) {
        if (size == 0) throw DomainError("FourierPlan: size must be positive");
        algorithm_ = algorithm;
        if (algorithm_ == Algorithm::automatic) {
            algorithm_ = size <= kNaiveMaxSize ? Algorithm::naive : Algorithm::bluestein;
        }
        const int sign = direction == Direction::forward ? -1 : +1;
        if (algorithm_ == Algorithm::naive) {
            phases_.resize(size);
            for (std::size_t j = 0; j < size; ++j) phases_[j] = detail::unit_root(j, size, sign);
        } else {
            build_bluestein(sign);
        }
    }

    std::size_t size() const noexcept { return size_; }
    Direction direction() const noexcept { return direction_; }
    /// Resolved algorithm; never `automatic`.
    Algorithm algorithm() const noexcept { return algorithm_; }

    /// Roots of unity (naive) or the chirp exp(+-i pi j^2 / N) (Bluestein).
    std::span<const Complex> phase_table() const noexcept { return phases_; }

    /// Length of the power-of-two convolution; zero for the naive path.
    std::size_t convolution_size() const noexcept { return filter_.size(); }

    /// Writes the transform of `in` to `out`. The spans must not alias.
    void execute(std::span<const Complex> in, std::span<Complex> out) const {
        detail::require_same_size(in.size(), size_, "FourierPlan::execute (input)");
        detail::require_same_size(out.size(), size_, "FourierPlan::execute (output)");
        if (algorithm_ == Algorithm::naive) {
            execute_naive(in, out);
        } else {
            execute_bluestein(in, out);
        }
    }

    LatticeFunction apply(const LatticeFunction& phi) const {
        std::vector<Complex> out(size_);
        execute(phi.values(), out);
        return LatticeFunction(std::move(out));
    }

  private:
    void build_bluestein(int sign) {
        const std::size_t n = size_;
        const std::size_t m = std::bit_ceil(2 * n - 1);

        // chirp[j] = exp(sign * i pi j^2 / N), with j^2 reduced mod 2N.
        phases_.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            const std::uint64_t jj = static_cast<std::uint64_t>(j) * j;
            phases_[j] = detail::unit_root(jj, 2 * static_cast<std::uint64_t>(n), sign);
        }

        twiddles_.resize(m / 2);
        for (std::size_t j = 0; j < m / 2; ++j) twiddles_[j] = detail::unit_root(j, m, -1);

        filter_.assign(m, Complex{});
        filter_[0] = std::conj(phases_[0]);
        for (std::size_t j = 1; j < n; ++j) {
            filter_[j] = std::conj(phases_[j]);
            filter_[m - j] = std::conj(phases_[j]);
        }
        detail::fft_radix2(filter_, twiddles_);
    }

    void execute_naive(std::span<const Complex> in, std::span<Complex> out) const {
        const std::size_t n = size_;
        for (std::size_t k = 0; k < n; ++k) {
            Complex acc{0.0, 0.0};
            std::size_t idx = 0; // k * j mod N, advanced incrementally
            for (std::size_t j = 0; j < n; ++j) {
                acc += phases_[idx] * in[j];
                idx += k;
                if (idx >= n) idx -= n;
            }
            out[k] = acc * scale_;
        }
    }

    void execute_bluestein(std::span<const Complex> in, std::span<Complex> out) const {
        const std::size_t n = size_;
        const std::size_t m = filter_.size();
        std::vector<Complex> work(m);
        for (std::size_t j = 0; j < n; ++j) work[j] = in[j] * phases_[j];
        detail::fft_radix2(work, twiddles_);
        for (std::size_t j = 0; j < m; ++j) work[j] = std::conj(work[j] * filter_[j]);
        // Inverse FFT via conjugation; the 1/M factor is folded into the output scale.
        detail::fft_radix2(work, twiddles_);
        const double s = scale_ / static_cast<double>(m);
        for (std::size_t k = 0; k < n; ++k) out[k] = phases_[k] * std::conj(work[k]) * s;
    }

    std::size_t size_;
    Direction direction_;
    Algorithm algorithm_;
    double scale_;
    std::vector<Complex> phases_;
    std::vector<Complex> twiddles_;
    std::vector<Complex> filter_; // FFT of the conjugate chirp, length M
};

inline LatticeFunction forward(const LatticeFunction& phi) {
    return FourierPlan(phi.size(), Direction::forward).apply(phi);
}

inline LatticeFunction inverse(const LatticeFunction& psi) {
    return FourierPlan(psi.size(), Direction::inverse).apply(psi);
}

/// The defining O(N^2) sum. Reference for the fast path.
inline LatticeFunction forward_naive(const LatticeFunction& phi) {
    return FourierPlan(phi.size(), Direction::forward, Algorithm::naive).apply(phi);
}

inline LatticeFunction inverse_naive(const LatticeFunction& psi) {
    return FourierPlan(psi.size(), Direction::inverse, Algorithm::naive).apply(psi);
}

/// |F[Phi](k)|^2: probability that trader T_k owns the stock.
inline ProbabilityVector owner_distribution(const NormalizedState& state) {
    const LatticeFunction spectrum = forward(state.function());
    return ProbabilityVector(detail::squared_moduli(spectrum.values()), detail::distribution_tolerance(state));
}

} // namespace qprice
