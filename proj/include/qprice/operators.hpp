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

// Price and ownership observables.
//
// The price operator P multiplies by the index, (P phi)(n) = n phi(n). The
// ownership operator is its Fourier conjugate O = F^{-1} P F, so the owner
// eigenstates are F^{-1}[delta_m]. P and O do not commute; the eigenvalues
// of [P, O] are purely imaginary and most of them sit close to i N / (2 pi)
// once N is moderately large.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "dense_operator.hpp"
#include "fourier.hpp"
#include "hermitian_eigen.hpp"
#include "lattice.hpp"

namespace qprice {

inline DenseOperator price_operator(std::size_t size) {
    if (size < 1) throw DomainError("price_operator: N must be at least 1");
    DenseOperator p(size);
    for (std::size_t n = 0; n < size; ++n) p(n, n) = static_cast<double>(n);
    return p;
}

/// O = F^{-1} P F, assembled column by column from transforms of the basis.
inline DenseOperator ownership_operator(std::size_t size) {
    if (size < 1) throw DomainError("ownership_operator: N must be at least 1");
    const FourierPlan fwd(size, Direction::forward);
    const FourierPlan inv(size, Direction::inverse);
    DenseOperator o(size);
    std::vector<Complex> basis(size), spectrum(size), column(size);
    for (std::size_t b = 0; b < size; ++b) {
        std::fill(basis.begin(), basis.end(), Complex{});
        basis[b] = 1.0;
        fwd.execute(basis, spectrum);
        for (std::size_t k = 0; k < size; ++k) spectrum[k] *= static_cast<double>(k);
        inv.execute(spectrum, column);
        for (std::size_t r = 0; r < size; ++r) o(r, b) = column[r];
    }
    return o;
}

/// N / (2 pi): the value most eigenvalues of -i [P, O] approach.
inline double commutator_scale(std::size_t size) { return static_cast<double>(size) / (2.0 * std::numbers::pi); }

inline DenseOperator commutator(const DenseOperator& a, const DenseOperator& b) {
    detail::require_same_size(a.size(), b.size(), "commutator");
    return a * b - b * a;
}

namespace detail {

inline void require_hermitian(const DenseOperator& a, const char* what) {
    if (!a.is_hermitian()) throw ContractError(std::string(what) + ": operator is not Hermitian");
}

/// <A> and ||A phi||^2 = <A^2> for Hermitian A.
struct Moments {
    double first;
    double second;
};

inline Moments moments(const DenseOperator& a, std::span<const Complex> phi) {
    std::vector<Complex> a_phi(phi.size());
    a.apply(phi, a_phi);
    const Complex mean = inner_product(phi, a_phi);
    const double tol = 1e-10 * std::max(1.0, std::abs(mean));
    if (std::abs(mean.imag()) > tol) {
        throw InvariantViolation("expectation: imaginary residue " + std::to_string(mean.imag()) +
                                 " for a Hermitian operator");
    }
    double sq = 0.0;
    for (const Complex& z : a_phi) sq += std::norm(z);
    return {mean.real(), sq};
}

inline double spread(const Moments& m) {
    const double radicand = m.second - m.first * m.first;
    if (radicand >= 0.0) return std::sqrt(radicand);
    // Cancellation noise grows with <A^2>; anything beyond it is a real error.
    if (radicand >= -1e-10 * std::max(1.0, m.second)) return 0.0;
    throw InvariantViolation("uncertainty: negative variance " + std::to_string(radicand));
}

} // namespace detail

/// <Phi, A Phi> for Hermitian A. The imaginary part is checked and dropped.
inline double expectation(const DenseOperator& a, const NormalizedState& state) {
    detail::require_same_size(a.size(), state.size(), "expectation");
    detail::require_hermitian(a, "expectation");
    return detail::moments(a, state.values()).first;
}

/// sqrt(<A^2> - <A>^2) for Hermitian A.
inline double uncertainty(const DenseOperator& a, const NormalizedState& state) {
    detail::require_same_size(a.size(), state.size(), "uncertainty");
    detail::require_hermitian(a, "uncertainty");
    return detail::spread(detail::moments(a, state.values()));
}

/// Eigenvalues of [P, O], ascending by imaginary part.
struct SpectrumResult {
    std::vector<Complex> eigenvalues;
    /// max_j || C v_j - lambda_j v_j ||
    double residual = 0.0;
    int sweeps = 0;

    std::vector<double> imaginary_parts() const {
        std::vector<double> out(eigenvalues.size());
        std::transform(eigenvalues.begin(), eigenvalues.end(), out.begin(), [](Complex z) { return z.imag(); });
        return out;
    }
};

/// Diagonalizes the Hermitian matrix -i [P, O] and maps its eigenvalues h
/// back to i h.
inline SpectrumResult commutator_spectrum(std::size_t size, const JacobiOptions& opts = {}) {
    if (size < 2) throw DomainError("commutator_spectrum: N must be at least 2");
    const DenseOperator c = commutator(price_operator(size), ownership_operator(size));
    const DenseOperator h = Complex{0.0, -1.0} * c;
    const EigenDecomposition eig = hermitian_eigen(h, opts);

    SpectrumResult out;
    out.sweeps = eig.sweeps;
    out.eigenvalues.resize(size);
    std::vector<Complex> v(size), cv(size);
    for (std::size_t j = 0; j < size; ++j) {
        const Complex lambda{0.0, eig.values[j]};
        out.eigenvalues[j] = lambda;
        for (std::size_t k = 0; k < size; ++k) v[k] = eig.vectors(k, j);
        c.apply(v, cv);
        double r = 0.0;
        for (std::size_t k = 0; k < size; ++k) r += std::norm(cv[k] - lambda * v[k]);
        out.residual = std::max(out.residual, std::sqrt(r));
    }
    if (out.residual > 1e-8 * c.frobenius_norm()) {
        throw ConvergenceError("commutator_spectrum: eigenpair residual " + std::to_string(out.residual) +
                               " above bound");
    }
    return out;
}

/// Both sides of Delta P * Delta O >= |<[P, O]>| / 2 for one state.
struct UncertaintyReport {
    double mean_price = 0.0;
    double mean_owner = 0.0;
    double delta_price = 0.0;
    double delta_owner = 0.0;
    double product = 0.0;
    double bound = 0.0;
    bool saturated = false;
};

inline constexpr double kRobertsonSlack = 1e-9;
inline constexpr double kSaturationGap = 1e-6;

/// P, O and [P, O] for one lattice size, built once and reused for many
/// states (trajectories, random sweeps).
class ObservableSet {
  public:
    explicit ObservableSet(std::size_t size)
        : price_(price_operator(size)), owner_(ownership_operator(size)), commutator_(qprice::commutator(price_, owner_)) {}

    std::size_t size() const noexcept { return price_.size(); }
    const DenseOperator& price() const noexcept { return price_; }
    const DenseOperator& owner() const noexcept { return owner_; }
    const DenseOperator& commutator_matrix() const noexcept { return commutator_; }

    /// Throws InvariantViolation if the Robertson inequality fails by more
    /// than kRobertsonSlack or <[P, O]> has a real part above 1e-9.
    UncertaintyReport report(const NormalizedState& state) const {
        detail::require_same_size(size(), state.size(), "uncertainty_product_report");
        const auto mp = detail::moments(price_, state.values());
        const auto mo = detail::moments(owner_, state.values());

        std::vector<Complex> c_phi(size());
        commutator_.apply(state.values(), c_phi);
        const Complex mc = inner_product(state.values(), c_phi);
        if (std::abs(mc.real()) > 1e-9) {
            throw InvariantViolation("uncertainty_product_report: <[P,O]> has real part " + std::to_string(mc.real()));
        }

        UncertaintyReport r;
        r.mean_price = mp.first;
        r.mean_owner = mo.first;
        r.delta_price = detail::spread(mp);
        r.delta_owner = detail::spread(mo);
        r.product = r.delta_price * r.delta_owner;
        r.bound = 0.5 * std::abs(mc);
        if (r.product < r.bound - kRobertsonSlack) {
            throw InvariantViolation("uncertainty_product_report: product " + std::to_string(r.product) +
                                     " below bound " + std::to_string(r.bound));
        }
        r.saturated = (r.product - r.bound) < kSaturationGap;
        return r;
    }

  private:
    DenseOperator price_;
    DenseOperator owner_;
    DenseOperator commutator_;
};

inline UncertaintyReport uncertainty_product_report(const NormalizedState& state) {
    return ObservableSet(state.size()).report(state);
}

} // namespace qprice
