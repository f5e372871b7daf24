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

// Complex functions on the cyclic lattice {0, ..., N-1}. The index n is read
// both as a price level and as the label of a trader; the two readings are
// related by the finite Fourier transform (see fourier.hpp).

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace qprice {

using Complex = std::complex<double>;

/// Tolerance on |sum |phi(n)|^2 - 1| accepted for a freshly built state.
inline constexpr double kUnitNormTolerance = 1e-12;

namespace detail {

inline void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimensionError(std::string(what) + ": size mismatch (" + std::to_string(a) + " vs " +
                             std::to_string(b) + ")");
    }
}

inline bool all_finite(std::span<const Complex> values) {
    for (const Complex& z : values) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

} // namespace detail

/// An element of H = C^N. Immutable once built; every amplitude is finite.
class LatticeFunction {
  public:
    /// Zero function on N points.
    explicit LatticeFunction(std::size_t size) : values_(size) {
        if (size == 0) throw DomainError("LatticeFunction: size must be positive");
    }

    explicit LatticeFunction(std::vector<Complex> values) : values_(std::move(values)) {
        if (values_.empty()) throw DomainError("LatticeFunction: size must be positive");
        if (!detail::all_finite(values_)) throw DomainError("LatticeFunction: non-finite amplitude");
    }

    std::size_t size() const noexcept { return values_.size(); }

    /// Unchecked access.
    const Complex& operator[](std::size_t n) const noexcept { return values_[n]; }

    const Complex& at(std::size_t n) const {
        if (n >= values_.size()) {
            throw IndexError("LatticeFunction: index " + std::to_string(n) + " out of range for N=" +
                             std::to_string(values_.size()));
        }
        return values_[n];
    }

    std::span<const Complex> values() const noexcept { return values_; }

    friend LatticeFunction operator+(const LatticeFunction& a, const LatticeFunction& b) {
        detail::require_same_size(a.size(), b.size(), "operator+");
        std::vector<Complex> out(a.size());
        for (std::size_t n = 0; n < out.size(); ++n) out[n] = a[n] + b[n];
        return LatticeFunction(std::move(out));
    }

    friend LatticeFunction operator*(Complex s, const LatticeFunction& a) {
        std::vector<Complex> out(a.values_);
        for (Complex& z : out) z *= s;
        return LatticeFunction(std::move(out));
    }

    friend bool operator==(const LatticeFunction&, const LatticeFunction&) = default;

  private:
    std::vector<Complex> values_;
};

/// <phi, psi> = sum_n conj(phi(n)) psi(n); conjugate-linear in phi.
inline Complex inner_product(std::span<const Complex> phi, std::span<const Complex> psi) {
    detail::require_same_size(phi.size(), psi.size(), "inner_product");
    Complex acc{0.0, 0.0};
    for (std::size_t n = 0; n < phi.size(); ++n) acc += std::conj(phi[n]) * psi[n];
    return acc;
}

inline Complex inner_product(const LatticeFunction& phi, const LatticeFunction& psi) {
    return inner_product(phi.values(), psi.values());
}

inline double norm(std::span<const Complex> phi) {
    double acc = 0.0;
    for (const Complex& z : phi) acc += std::norm(z);
    return std::sqrt(acc);
}

inline double norm(const LatticeFunction& phi) { return norm(phi.values()); }

/// A lattice function of unit norm. The only ways in are normalize() and
/// adopt(), both of which check the norm.
class NormalizedState {
  public:
    /// Wraps an already normalized function. `tolerance` bounds |norm - 1|;
    /// the default is the construction tolerance, time evolution passes its
    /// own conservation threshold.
    static NormalizedState adopt(LatticeFunction f, double tolerance = kUnitNormTolerance) {
        const double err = std::abs(norm(f) - 1.0);
        if (!(err <= tolerance)) {
            throw ContractError("NormalizedState: |norm - 1| = " + std::to_string(err) +
                                " exceeds tolerance");
        }
        return NormalizedState(std::move(f), err);
    }

    std::size_t size() const noexcept { return f_.size(); }
    const Complex& operator[](std::size_t n) const noexcept { return f_[n]; }
    std::span<const Complex> values() const noexcept { return f_.values(); }
    const LatticeFunction& function() const noexcept { return f_; }

    /// |norm - 1| measured when the state was admitted.
    double norm_error() const noexcept { return norm_error_; }

    friend bool operator==(const NormalizedState& a, const NormalizedState& b) { return a.f_ == b.f_; }

  private:
    NormalizedState(LatticeFunction f, double err) : f_(std::move(f)), norm_error_(err) {}

    LatticeFunction f_;
    double norm_error_;
};

inline NormalizedState normalize(const LatticeFunction& phi) {
    const double nrm = norm(phi);
    if (!(nrm > 0.0)) throw DegenerateStateError("normalize: zero-norm function");
    std::vector<Complex> out(phi.values().begin(), phi.values().end());
    for (Complex& z : out) z /= nrm;
    return NormalizedState::adopt(LatticeFunction(std::move(out)));
}

/// N non-negative reals summing to one.
class ProbabilityVector {
  public:
    explicit ProbabilityVector(std::vector<double> probs, double tolerance = kUnitNormTolerance)
        : probs_(std::move(probs)) {
        if (probs_.empty()) throw DomainError("ProbabilityVector: size must be positive");
        double total = 0.0;
        for (double p : probs_) {
            if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("ProbabilityVector: negative or non-finite entry");
            total += p;
        }
        if (!(std::abs(total - 1.0) <= tolerance)) {
            throw InvariantViolation("ProbabilityVector: entries sum to " + std::to_string(total));
        }
    }

    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t n) const noexcept { return probs_[n]; }
    std::span<const double> probs() const noexcept { return probs_; }

    /// First index of the largest entry.
    std::size_t argmax() const noexcept {
        std::size_t best = 0;
        for (std::size_t n = 1; n < probs_.size(); ++n) {
            if (probs_[n] > probs_[best]) best = n;
        }
        return best;
    }

    /// sum_n n p(n)
    double mean() const noexcept {
        double acc = 0.0;
        for (std::size_t n = 0; n < probs_.size(); ++n) acc += static_cast<double>(n) * probs_[n];
        return acc;
    }

  private:
    std::vector<double> probs_;
};

namespace detail {

/// Sum-to-one tolerance for distributions of a state that was admitted with
/// a looser norm check.
inline double distribution_tolerance(const NormalizedState& s) {
    return kUnitNormTolerance + 3.0 * s.norm_error();
}

inline std::vector<double> squared_moduli(std::span<const Complex> values) {
    std::vector<double> out(values.size());
    for (std::size_t n = 0; n < values.size(); ++n) out[n] = std::norm(values[n]);
    return out;
}

} // namespace detail

/// |Phi(n)|^2: probability that a transaction happens at price n.
inline ProbabilityVector price_distribution(const NormalizedState& state) {
    return ProbabilityVector(detail::squared_moduli(state.values()), detail::distribution_tolerance(state));
}

} // namespace qprice
