#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "../numerics/errors.hpp"
#include "symbol.hpp"

namespace microlocal {

inline constexpr double kFlowCoordinateLimit = 1e12;

namespace detail {
template <std::size_t N>
PhaseSpacePoint<N> axpy(const PhaseSpacePoint<N>& p, double a, const HamiltonField<N>& k) {
    PhaseSpacePoint<N> q = p;
    for (std::size_t i = 0; i < N; ++i) {
        q.x[i] += a * k.dx[i];
        q.xi[i] += a * k.dxi[i];
    }
    return q;
}
} // namespace detail

// Classical RK4 on the Hamiltonian field with `steps` equal steps over [0, T].
// Returns steps + 1 samples including both endpoints; T = 0 returns {rho0}.
template <std::size_t N>
std::vector<PhaseSpacePoint<N>> flow(const SymbolSpec& s, const PhaseSpacePoint<N>& rho0, double T, int steps) {
    if (steps < 16) throw std::invalid_argument("flow: steps must be >= 16");
    if (T == 0.0) return {rho0};
    const double dt = T / steps;
    std::vector<PhaseSpacePoint<N>> traj;
    traj.reserve(steps + 1);
    traj.push_back(rho0);
    PhaseSpacePoint<N> p = rho0;
    for (int n = 0; n < steps; ++n) {
        const auto k1 = hamiltonian_field(s, p);
        const auto k2 = hamiltonian_field(s, detail::axpy(p, 0.5 * dt, k1));
        const auto k3 = hamiltonian_field(s, detail::axpy(p, 0.5 * dt, k2));
        const auto k4 = hamiltonian_field(s, detail::axpy(p, dt, k3));
        for (std::size_t i = 0; i < N; ++i) {
            p.x[i] += dt / 6.0 * (k1.dx[i] + 2.0 * k2.dx[i] + 2.0 * k3.dx[i] + k4.dx[i]);
            p.xi[i] += dt / 6.0 * (k1.dxi[i] + 2.0 * k2.dxi[i] + 2.0 * k3.dxi[i] + k4.dxi[i]);
        }
        for (std::size_t i = 0; i < N; ++i) {
            if (!(std::abs(p.x[i]) <= kFlowCoordinateLimit) || !(std::abs(p.xi[i]) <= kFlowCoordinateLimit))
                throw StepOverflow("flow: coordinate exceeded 1e12 at step " + std::to_string(n + 1));
        }
        traj.push_back(p);
    }
    return traj;
}

} // namespace microlocal
