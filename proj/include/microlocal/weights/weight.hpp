#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "../phase_space/point.hpp"
#include "cutoff.hpp"
#include "q_eps.hpp"

namespace microlocal {

struct WeightParams {
    double eps = 0.125;  // growth cutoff: G = Phi xi1 up to xi1 = 1/eps
    double delta = 0.1;  // cone width of Phi

    // Phi = psi = 1 for xi1 beyond this floor (on the axis x = 0, xi' = 0).
    double low_frequency_floor() const { return 2.0 * delta; }

    void validate() const {
        if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("WeightParams: eps must lie in (0, 1]");
        if (!(delta > 0.0 && delta <= 0.25)) throw std::invalid_argument("WeightParams: delta must lie in (0, 0.25]");
    }
};

// supp Phi lies in {|x1|, |x'| <= 2 delta, |xi'| <= 2 delta xi1, xi1 >= delta}; the
// configured cone is {|x| <= 4 delta, |xi'| <= 4 delta xi1, xi1 > 0}.
inline bool support_in_cone(double delta) {
    return std::sqrt(2.0) * 2.0 * delta <= 4.0 * delta && 2.0 * delta <= 4.0 * delta && delta > 0.0;
}

// Everything known about G = Phi q_eps(xi1) at one point, closed form.
template <std::size_t N>
struct WeightEval {
    double phi1 = 0, phi2 = 1, phi3 = 1, psi = 0;
    double Phi = 0;
    Vec<N> dPhi_dx{}, dPhi_dxi{};
    double q = 0, dq = 0;
    double G = 0;
    Vec<N> dG_dx{}, dG_dxi{};
    // The three terms of H_p Phi for p = -x1 xi1, H_p = xi1 d_xi1 - x1 d_x1.
    double HpPhi_x1 = 0, HpPhi_cone = 0, HpPhi_low = 0;
    double HpPhi() const { return HpPhi_x1 + HpPhi_cone + HpPhi_low; }
    double HpG = 0;
};

namespace detail {
template <std::size_t N>
double primed_norm(const Vec<N>& v) {
    if constexpr (N == 1) return 0.0;
    else return std::abs(v[1]);
}
} // namespace detail

// Evaluate with precomputed q = q_eps(xi1), dq = q_eps'(xi1) (grids reuse them).
template <std::size_t N>
WeightEval<N> evaluate_weight(const PhaseSpacePoint<N>& rho, const WeightParams& wp, double q, double dq) {
    WeightEval<N> w;
    const double d = wp.delta;
    const double x1 = rho.x[0], k1 = rho.xi[0];
    w.q = q;
    w.dq = dq;
    if (!(k1 > d)) return w; // psi = 1 - phi((xi1)_+) vanishes for xi1 <= delta

    const double ax2 = detail::primed_norm<N>(rho.x);
    const double ak2 = detail::primed_norm<N>(rho.xi);
    const double r = ak2 / k1;
    w.phi1 = phi(x1, d);
    w.phi2 = phi(r, d);
    w.phi3 = phi(ax2, d);
    w.psi = 1.0 - phi(k1, d);
    w.Phi = w.phi1 * w.phi2 * w.phi3 * w.psi;

    const double dp1 = phi_prime(x1, d), dp2 = phi_prime(r, d), dp3 = phi_prime(ax2, d), dpk = phi_prime(k1, d);
    w.dPhi_dx[0] = dp1 * w.phi2 * w.phi3 * w.psi;
    w.dPhi_dxi[0] = w.phi1 * w.phi3 * (dp2 * (-r / k1) * w.psi - w.phi2 * dpk);
    if constexpr (N == 2) {
        const double sx = rho.x[1] > 0 ? 1.0 : (rho.x[1] < 0 ? -1.0 : 0.0);
        const double sk = rho.xi[1] > 0 ? 1.0 : (rho.xi[1] < 0 ? -1.0 : 0.0);
        w.dPhi_dx[1] = w.phi1 * w.phi2 * dp3 * sx * w.psi;
        w.dPhi_dxi[1] = w.phi1 * w.phi3 * w.psi * dp2 * sk / k1;
    }

    w.HpPhi_x1 = -x1 * dp1 * w.phi2 * w.phi3 * w.psi;
    w.HpPhi_cone = -r * dp2 * w.phi1 * w.phi3 * w.psi;
    w.HpPhi_low = -w.phi1 * w.phi2 * w.phi3 * k1 * dpk;

    w.G = w.Phi * q;
    for (std::size_t i = 0; i < N; ++i) {
        w.dG_dx[i] = w.dPhi_dx[i] * q;
        w.dG_dxi[i] = w.dPhi_dxi[i] * q;
    }
    w.dG_dxi[0] += w.Phi * dq;
    w.HpG = w.Phi * k1 * dq + w.HpPhi() * q;
    return w;
}

template <std::size_t N>
WeightEval<N> evaluate_weight(const PhaseSpacePoint<N>& rho, const WeightParams& wp) {
    const double k1 = rho.xi[0];
    if (!(k1 > wp.delta)) return WeightEval<N>{};
    return evaluate_weight(rho, wp, q_eps(k1, wp.eps), q_eps_prime(k1, wp.eps));
}

// Phi = phi(x1) phi(|xi'|/xi1) phi(|x'|) (1 - phi((xi1)_+)).
template <std::size_t N>
double weight_Phi(const PhaseSpacePoint<N>& rho, double delta) {
    return evaluate_weight(rho, WeightParams{1.0, delta}, 0.0, 0.0).Phi;
}

template <std::size_t N>
double weight_G(const PhaseSpacePoint<N>& rho, const WeightParams& wp) {
    return evaluate_weight(rho, wp).G;
}

} // namespace microlocal
