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

// Named states on Z_N: price eigenstates (deltas), the periodized Gaussian
// comb gamma_kappa and its normalization Upsilon_kappa, and the modulated,
// shifted packet Psi that is localized in price and in owner at once.

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "fourier.hpp"
#include "lattice.hpp"

namespace qprice {

/// Width kappa > 0 of a Gaussian comb on N points.
class ThetaParams {
  public:
    ThetaParams(double kappa, std::size_t size) : kappa_(kappa), size_(size) {
        if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("ThetaParams: kappa must be positive and finite");
        if (size == 0) throw DomainError("ThetaParams: size must be positive");
    }

    double kappa() const noexcept { return kappa_; }
    std::size_t size() const noexcept { return size_; }

    /// Same lattice, kappa -> 1/kappa.
    ThetaParams dual() const { return ThetaParams(1.0 / kappa_, size_); }

  private:
    double kappa_;
    std::size_t size_;
};

/// Comb width plus the price center n0 and owner center k0, both in [0, N).
class PacketParams {
  public:
    PacketParams(ThetaParams theta, std::size_t n0, std::size_t k0) : theta_(theta), n0_(n0), k0_(k0) {
        if (n0 >= theta.size()) throw IndexError("PacketParams: n0 out of range");
        if (k0 >= theta.size()) throw IndexError("PacketParams: k0 out of range");
    }

    const ThetaParams& theta() const noexcept { return theta_; }
    std::size_t n0() const noexcept { return n0_; }
    std::size_t k0() const noexcept { return k0_; }

  private:
    ThetaParams theta_;
    std::size_t n0_;
    std::size_t k0_;
};

inline NormalizedState delta_state(std::size_t m, std::size_t size) {
    if (size == 0) throw DomainError("delta_state: size must be positive");
    if (m >= size) {
        throw IndexError("delta_state: m=" + std::to_string(m) + " out of range for N=" + std::to_string(size));
    }
    std::vector<Complex> v(size);
    v[m] = 1.0;
    return NormalizedState::adopt(LatticeFunction(std::move(v)));
}

/// Jacobi theta_3(z, i t) = sum_a exp(-pi t a^2) exp(2 pi i a z) for real z,
/// t > 0. The series is real there; it is summed as 1 + 2 sum_{a>=1} ... cos.
inline double theta3(double z, double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("theta3: t must be positive (series diverges otherwise)");
    if (!std::isfinite(z)) throw DomainError("theta3: z must be finite");
    z -= std::floor(z);
    double sum = 1.0;
    for (long a = 1;; ++a) {
        const double ad = static_cast<double>(a);
        const double amp = 2.0 * std::exp(-std::numbers::pi * t * ad * ad);
        if (amp < 1e-16 * (std::abs(sum) + 1.0)) break;
        double phase = ad * z;
        phase -= std::floor(phase);
        sum += amp * std::cos(2.0 * std::numbers::pi * phase);
    }
    return sum;
}

/// Half-width M of the window m in [-M, M] used for gamma_kappa: the first
/// omitted term exp(-kappa pi / N (mN + n)^2) is below 1e-18 for every n.
inline long gamma_window(const ThetaParams& p) {
    const double n = static_cast<double>(p.size());
    const double rate = p.kappa() * std::numbers::pi / n;
    const double cutoff = -std::log(1e-18);
    long m = 0;
    // Closest omitted exponent is (M N + 1)^2 (from m = -(M+1), n = N-1) or
    // ((M+1) N)^2; the former is smaller.
    while (rate * (m * n + 1.0) * (m * n + 1.0) <= cutoff) ++m;
    return m;
}

/// gamma_kappa(n) = sum_m exp(-kappa pi / N (m N + n)^2); real, positive,
/// N-periodic by construction.
inline LatticeFunction gamma_state(const ThetaParams& p) {
    const std::size_t size = p.size();
    const double nd = static_cast<double>(size);
    const double rate = p.kappa() * std::numbers::pi / nd;
    const long window = gamma_window(p);
    std::vector<Complex> v(size);
    for (std::size_t n = 0; n < size; ++n) {
        // Outermost terms first so the small ones are not absorbed.
        double acc = 0.0;
        for (long m = window; m >= 1; --m) {
            const double xp = m * nd + static_cast<double>(n);
            const double xm = -m * nd + static_cast<double>(n);
            acc += std::exp(-rate * xp * xp) + std::exp(-rate * xm * xm);
        }
        acc += std::exp(-rate * static_cast<double>(n) * static_cast<double>(n));
        v[n] = acc;
    }
    return LatticeFunction(std::move(v));
}

/// Upsilon_kappa = gamma_kappa / ||gamma_kappa||; F[Upsilon_kappa] = Upsilon_{1/kappa}.
inline NormalizedState upsilon_state(const ThetaParams& p) { return normalize(gamma_state(p)); }

/// Psi(n) = exp(2 pi i k0 n / N) Upsilon_kappa((n - n0) mod N).
inline NormalizedState gaussian_packet(const PacketParams& p) {
    const std::size_t size = p.theta().size();
    const NormalizedState comb = upsilon_state(p.theta());
    std::vector<Complex> v(size);
    for (std::size_t n = 0; n < size; ++n) {
        const std::size_t shifted = (n + size - p.n0()) % size;
        v[n] = detail::unit_root(static_cast<std::uint64_t>(p.k0()) * n, size, +1) * comb[shifted];
    }
    return NormalizedState::adopt(LatticeFunction(std::move(v)));
}

} // namespace qprice
