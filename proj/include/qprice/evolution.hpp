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

// Time evolution of a price state under
//
//   i dPhi/dt = (O^2 / (2 mu) + V(P, t)) Phi.
//
// The kinetic term is diagonal in the owner basis (eigenvalues k^2 / (2 mu),
// k = 0..N-1) and the potential is diagonal in the price basis, so the
// Strang splitting
//
//   exp(-i dt/2 T) exp(-i dt V(t + dt/2)) exp(-i dt/2 T)
//
// costs four transforms per step and is exactly unitary. exact_propagator()
// diagonalizes the frozen Hamiltonian instead and serves as the reference.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dense_operator.hpp"
#include "fourier.hpp"
#include "hermitian_eigen.hpp"
#include "lattice.hpp"
#include "operators.hpp"

namespace qprice {

enum class PotentialKind { zero, harmonic, linear, tabulated, modulated };

/// Real potential V(n, t) on the price levels.
///
///   zero       0
///   harmonic   (omega / 2) (n - center)^2
///   linear     slope * n
///   tabulated  values[n]
///   modulated  (1 + amplitude cos(angular_frequency t)) base(n, t)
class Potential {
  public:
    struct Zero {
        friend bool operator==(const Zero&, const Zero&) = default;
    };
    struct Harmonic {
        double center;
        double omega;
        friend bool operator==(const Harmonic&, const Harmonic&) = default;
    };
    struct Linear {
        double slope;
        friend bool operator==(const Linear&, const Linear&) = default;
    };
    struct Tabulated {
        std::vector<double> values;
        friend bool operator==(const Tabulated&, const Tabulated&) = default;
    };
    struct Modulated {
        std::shared_ptr<const Potential> base;
        double amplitude;
        double angular_frequency;
        friend bool operator==(const Modulated& a, const Modulated& b) {
            return *a.base == *b.base && a.amplitude == b.amplitude && a.angular_frequency == b.angular_frequency;
        }
    };

    Potential() = default;

    static Potential zero() { return Potential(Zero{}); }
    static Potential harmonic(double center, double omega) {
        require_finite(center, "harmonic center");
        require_finite(omega, "harmonic omega");
        return Potential(Harmonic{center, omega});
    }
    static Potential linear(double slope) {
        require_finite(slope, "linear slope");
        return Potential(Linear{slope});
    }
    static Potential tabulated(std::vector<double> values) {
        if (values.empty()) throw DomainError("Potential: tabulated values must not be empty");
        for (double v : values) require_finite(v, "tabulated value");
        return Potential(Tabulated{std::move(values)});
    }
    static Potential modulated(Potential base, double amplitude, double angular_frequency) {
        require_finite(amplitude, "modulation amplitude");
        require_finite(angular_frequency, "modulation angular frequency");
        return Potential(
            Modulated{std::make_shared<const Potential>(std::move(base)), amplitude, angular_frequency});
    }

    PotentialKind kind() const noexcept { return static_cast<PotentialKind>(v_.index()); }

    template <class T>
    const T& as() const {
        return std::get<T>(v_);
    }

    /// True when V does not depend on t.
    bool is_static() const noexcept {
        if (const auto* m = std::get_if<Modulated>(&v_)) {
            return m->amplitude == 0.0 || m->angular_frequency == 0.0 || m->base->kind() == PotentialKind::zero;
        }
        return true;
    }

    /// Throws if the potential cannot be used on N price levels.
    void validate(std::size_t size) const {
        if (const auto* tab = std::get_if<Tabulated>(&v_)) {
            if (tab->values.size() != size) {
                throw DimensionError("Potential: tabulated length " + std::to_string(tab->values.size()) +
                                     " does not match N=" + std::to_string(size));
            }
        } else if (const auto* m = std::get_if<Modulated>(&v_)) {
            m->base->validate(size);
        }
    }

    double evaluate(std::size_t n, double t) const {
        const double x = static_cast<double>(n);
        return std::visit(
            [&](const auto& p) -> double {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, Zero>) {
                    return 0.0;
                } else if constexpr (std::is_same_v<T, Harmonic>) {
                    return 0.5 * p.omega * (x - p.center) * (x - p.center);
                } else if constexpr (std::is_same_v<T, Linear>) {
                    return p.slope * x;
                } else if constexpr (std::is_same_v<T, Tabulated>) {
                    return p.values.at(n);
                } else {
                    return (1.0 + p.amplitude * std::cos(p.angular_frequency * t)) * p.base->evaluate(n, t);
                }
            },
            v_);
    }

    /// V(., t) on all N levels.
    std::vector<double> sample(std::size_t size, double t) const {
        std::vector<double> out(size);
        for (std::size_t n = 0; n < size; ++n) out[n] = evaluate(n, t);
        return out;
    }

    friend bool operator==(const Potential& a, const Potential& b) { return a.v_ == b.v_; }

  private:
    using Variant = std::variant<Zero, Harmonic, Linear, Tabulated, Modulated>;

    explicit Potential(Variant v) : v_(std::move(v)) {}

    static void require_finite(double x, const char* what) {
        if (!std::isfinite(x)) throw DomainError(std::string("Potential: ") + what + " must be finite");
    }

    Variant v_{Zero{}};
};

/// mu > 0, dt > 0, steps >= 1, finite t0.
class EvolutionParams {
  public:
    EvolutionParams(double mu, double dt, long steps, double t0 = 0.0) : mu_(mu), dt_(dt), steps_(steps), t0_(t0) {
        if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("EvolutionParams: mu must be positive");
        if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("EvolutionParams: dt must be positive");
        if (steps < 1) throw DomainError("EvolutionParams: steps must be at least 1");
        if (!std::isfinite(t0)) throw DomainError("EvolutionParams: t0 must be finite");
    }

    double mu() const noexcept { return mu_; }
    double dt() const noexcept { return dt_; }
    long steps() const noexcept { return steps_; }
    double t0() const noexcept { return t0_; }

    friend bool operator==(const EvolutionParams&, const EvolutionParams&) = default;

  private:
    double mu_;
    double dt_;
    long steps_;
    double t0_;
};

/// Largest |norm - 1| tolerated at a recorded step.
inline constexpr double kConservationTolerance = 1e-8;

struct TrajectoryRecord {
    long step = 0;
    double time = 0.0;
    NormalizedState state;
    double mean_price = 0.0;
    double mean_owner = 0.0;
    double delta_price = 0.0;
    double delta_owner = 0.0;
    double uncertainty_product = 0.0;
    double uncertainty_bound = 0.0;
    double norm_error = 0.0;
};

/// Split-operator stepper for one lattice size, inertia and potential. Owns
/// its transform plans and scratch space; one instance per trajectory.
class StrangIntegrator {
  public:
    StrangIntegrator(std::size_t size, double mu, Potential potential)
        : size_(size),
          mu_(mu),
          potential_(std::move(potential)),
          fwd_(size, Direction::forward),
          inv_(size, Direction::inverse),
          scratch_(size) {
        if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("StrangIntegrator: mu must be positive");
        potential_.validate(size);
    }

    std::size_t size() const noexcept { return size_; }
    double mu() const noexcept { return mu_; }
    const Potential& potential() const noexcept { return potential_; }

    /// psi <- exp(-i tau O^2 / (2 mu)) psi. Any finite tau, including 0 and
    /// negative values.
    void kinetic(std::span<Complex> psi, double tau) {
        detail::require_same_size(psi.size(), size_, "StrangIntegrator::kinetic");
        fwd_.execute(psi, scratch_);
        for (std::size_t k = 0; k < size_; ++k) {
            const double energy = static_cast<double>(k) * static_cast<double>(k) / (2.0 * mu_);
            scratch_[k] *= std::polar(1.0, -tau * energy);
        }
        inv_.execute(scratch_, psi);
    }

    /// psi(n) <- exp(-i tau V(n, t)) psi(n).
    void potential_phase(std::span<Complex> psi, double tau, double t) const {
        detail::require_same_size(psi.size(), size_, "StrangIntegrator::potential_phase");
        for (std::size_t n = 0; n < size_; ++n) psi[n] *= std::polar(1.0, -tau * potential_.evaluate(n, t));
    }

    /// One Strang step from t to t + dt; V is sampled at the midpoint.
    void step(std::span<Complex> psi, double t, double dt) {
        kinetic(psi, 0.5 * dt);
        potential_phase(psi, dt, t + 0.5 * dt);
        kinetic(psi, 0.5 * dt);
    }

  private:
    std::size_t size_;
    double mu_;
    Potential potential_;
    FourierPlan fwd_;
    FourierPlan inv_;
    std::vector<Complex> scratch_;
};

namespace detail {

inline std::vector<Complex> copy_values(const LatticeFunction& f) { return {f.values().begin(), f.values().end()}; }

inline void require_positive_mu(double mu) {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("mu must be positive");
}

} // namespace detail

/// exp(-i tau O^2 / (2 mu)) applied to phi.
inline LatticeFunction kinetic_step(const LatticeFunction& phi, double tau, double mu) {
    detail::require_positive_mu(mu);
    StrangIntegrator integ(phi.size(), mu, Potential::zero());
    auto v = detail::copy_values(phi);
    integ.kinetic(v, tau);
    return LatticeFunction(std::move(v));
}

/// Half of the kinetic part of a Strang step of length dt.
inline LatticeFunction kinetic_half_step(const LatticeFunction& phi, double dt, double mu) {
    return kinetic_step(phi, 0.5 * dt, mu);
}

/// Phi(n) <- exp(-i dt V(n, t_mid)) Phi(n).
inline LatticeFunction potential_full_step(const LatticeFunction& phi, double dt, const Potential& v, double t_mid) {
    v.validate(phi.size());
    std::vector<Complex> out = detail::copy_values(phi);
    for (std::size_t n = 0; n < out.size(); ++n) out[n] *= std::polar(1.0, -dt * v.evaluate(n, t_mid));
    return LatticeFunction(std::move(out));
}

inline LatticeFunction strang_step(const LatticeFunction& phi, double t, const EvolutionParams& p, const Potential& v) {
    StrangIntegrator integ(phi.size(), p.mu(), v);
    auto psi = detail::copy_values(phi);
    integ.step(psi, t, p.dt());
    return LatticeFunction(std::move(psi));
}

/// Runs p.steps() Strang steps from p.t0(). Records at step 0, at every
/// multiple of record_every and at the final step, handing each record to
/// `sink` as soon as it is ready. The state is never renormalized; a record
/// whose norm drifted beyond `tolerance` raises ConservationViolation instead
/// of being delivered.
inline void evolve(const NormalizedState& initial, const EvolutionParams& p, const Potential& v, long record_every,
                   const std::function<void(const TrajectoryRecord&)>& sink,
                   double tolerance = kConservationTolerance) {
    if (record_every < 1) throw DomainError("evolve: record_every must be at least 1");
    const std::size_t size = initial.size();
    StrangIntegrator integ(size, p.mu(), v);
    const ObservableSet observables(size);
    auto psi = detail::copy_values(initial.function());

    auto record = [&](long step) {
        const double t = p.t0() + static_cast<double>(step) * p.dt();
        const double err = std::abs(norm(std::span<const Complex>(psi)) - 1.0);
        if (!(err <= tolerance)) {
            throw ConservationViolation("evolve: norm drift " + std::to_string(err) + " at step " + std::to_string(step),
                                        step, t, err);
        }
        NormalizedState s = NormalizedState::adopt(LatticeFunction(psi), kConservationTolerance);
        const UncertaintyReport r = observables.report(s);
        sink(TrajectoryRecord{step, t, std::move(s), r.mean_price, r.mean_owner, r.delta_price, r.delta_owner,
                              r.product, r.bound, err});
    };

    record(0);
    for (long step = 1; step <= p.steps(); ++step) {
        integ.step(psi, p.t0() + static_cast<double>(step - 1) * p.dt(), p.dt());
        if (step % record_every == 0 || step == p.steps()) record(step);
    }
}

inline std::vector<TrajectoryRecord> evolve(const NormalizedState& initial, const EvolutionParams& p,
                                            const Potential& v, long record_every) {
    std::vector<TrajectoryRecord> out;
    evolve(initial, p, v, record_every, [&](const TrajectoryRecord& r) { out.push_back(r); });
    return out;
}

/// T = O^2 / (2 mu) as a dense matrix, F^{-1} diag(k^2 / (2 mu)) F.
inline DenseOperator kinetic_operator(std::size_t size, double mu) {
    detail::require_positive_mu(mu);
    const FourierPlan fwd(size, Direction::forward);
    const FourierPlan inv(size, Direction::inverse);
    DenseOperator t(size);
    std::vector<Complex> basis(size), spectrum(size), column(size);
    for (std::size_t b = 0; b < size; ++b) {
        std::fill(basis.begin(), basis.end(), Complex{});
        basis[b] = 1.0;
        fwd.execute(basis, spectrum);
        for (std::size_t k = 0; k < size; ++k) spectrum[k] *= static_cast<double>(k) * static_cast<double>(k) / (2.0 * mu);
        inv.execute(spectrum, column);
        for (std::size_t r = 0; r < size; ++r) t(r, b) = column[r];
    }
    return t;
}

/// H = O^2 / (2 mu) + diag(V(., t)).
inline DenseOperator static_hamiltonian(std::size_t size, double mu, const Potential& v, double t) {
    v.validate(size);
    DenseOperator h = kinetic_operator(size, mu);
    for (std::size_t n = 0; n < size; ++n) h(n, n) += v.evaluate(n, t);
    return h;
}

/// U exp(-i duration Lambda) U^dagger for the Hamiltonian frozen at
/// t_snapshot.
inline DenseOperator exact_propagator(std::size_t size, double mu, const Potential& v, double t_snapshot,
                                      double duration) {
    const EigenDecomposition eig = hermitian_eigen(static_hamiltonian(size, mu, v, t_snapshot));
    DenseOperator scaled(size);
    for (std::size_t r = 0; r < size; ++r) {
        for (std::size_t j = 0; j < size; ++j) {
            scaled(r, j) = eig.vectors(r, j) * std::polar(1.0, -duration * eig.values[j]);
        }
    }
    DenseOperator p = scaled * eig.vectors.adjoint();

    const double defect = (p.adjoint() * p - DenseOperator::identity(size)).frobenius_norm();
    if (defect > 1e-10 * std::sqrt(static_cast<double>(size))) {
        throw InvariantViolation("exact_propagator: unitarity defect " + std::to_string(defect));
    }
    return p;
}

} // namespace qprice
