#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "../weights/weight.hpp"
#include "params.hpp"

namespace microlocal {

// Gaussian envelope cut: <xi> R^2 / (2h) = 37, i.e. e^{-37} ~ 1e-16.
inline constexpr double kEnvelopeExponent = 37.0;

namespace detail {

// Integrate f over the box prod_j [c_j - R, c_j + R] by nested adaptive GK.
// For N = 2 the reported l1 is that of the inner integrals, a lower bound.
template <std::size_t N, class F>
QuadResult<cplx> integrate_box(F&& f, const Vec<N>& c, double R, const QuadratureSpec& q,
                               const std::vector<double>& cuts) {
    if constexpr (N == 1) {
        return integrate_gk([&](double y) { return f(Vec<1>{y}); }, c[0] - R, c[0] + R, q, cuts);
    } else {
        auto inner = [&](double y1) {
            return integrate_gk([&](double y2) { return f(Vec<2>{y1, y2}); }, c[1] - R, c[1] + R, q).value;
        };
        return integrate_gk(inner, c[0] - R, c[0] + R, q);
    }
}

} // namespace detail

struct FbiSample {
    cplx value;
    double l1; // same integral with |integrand|, sets the roundoff floor of value
};

// T u at a complex point (z, zeta): h^{-3N/4} <zeta>^{N/4} int e^{(i/h)((z-y).zeta + (i/2)<zeta>(z-y)^2)} u(y) dy,
// truncated to the box where the Gaussian envelope is above e^{-37} of its peak.
template <std::size_t N>
FbiSample fbi_sample(const SampledFunction<N>& u, const ComplexPoint<N>& a, const FbiParams& p) {
    p.validate();
    const double h = p.h;
    cplx w;
    try {
        w = japanese<N>(a.xi);
    } catch (const BranchCut&) {
        throw EnvelopeLost("fbi: Re(1 + zeta^2) <= 0, Gaussian envelope lost");
    }
    const double R = std::sqrt(2.0 * h * kEnvelopeExponent / w.real());
    Vec<N> c{};
    for (std::size_t j = 0; j < N; ++j) c[j] = (w * a.x[j] - cplx(0, 1) * a.xi[j]).real() / w.real();

    const cplx i(0.0, 1.0);
    auto integrand = [&](const Vec<N>& y) -> cplx {
        cplx lin = 0.0, quad = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            const cplx d = a.x[j] - y[j];
            lin += d * a.xi[j];
            quad += d * d;
        }
        const cplx v = u(y);
        if (v == 0.0) return 0.0;
        return std::exp(i * lin / h - w * quad / (2.0 * h)) * v;
    };
    std::vector<double> cuts;
    if constexpr (N == 1) cuts = u.singular_points;
    const auto r = detail::integrate_box<N>(integrand, c, R, p.quad, cuts);
    const cplx pre = std::pow(h, -0.75 * N) * std::pow(w, 0.25 * N);
    return {pre * r.value, std::abs(pre) * r.l1};
}

template <std::size_t N>
cplx fbi_at(const SampledFunction<N>& u, const ComplexPoint<N>& a, const FbiParams& p) {
    return fbi_sample(u, a, p).value;
}

template <std::size_t N>
cplx fbi_transform(const SampledFunction<N>& u, const PhaseSpacePoint<N>& rho, const FbiParams& p) {
    return fbi_at(u, complexify(rho), p);
}

// Standard transform with weight (x-y)^2/2 and unit prefactor constant:
// h^{-3N/4} int e^{(i/h)((x-y).omega + (i/2)(x-y)^2)} u(y) dy. Evaluated with real
// arithmetic for the envelope, independently of fbi_at.
template <std::size_t N>
cplx standard_fbi(const SampledFunction<N>& u, const Vec<N>& x, const Vec<N>& omega, double h,
                  const QuadratureSpec& q) {
    const double R = std::sqrt(2.0 * h * kEnvelopeExponent);
    auto integrand = [&](const Vec<N>& y) -> cplx {
        double ph = 0.0, r2 = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            ph += (x[j] - y[j]) * omega[j];
            r2 += (x[j] - y[j]) * (x[j] - y[j]);
        }
        return std::exp(-r2 / (2.0 * h)) * std::polar(1.0, ph / h) * u(y);
    };
    std::vector<double> cuts;
    if constexpr (N == 1) cuts = u.singular_points;
    return std::pow(h, -0.75 * N) * detail::integrate_box<N>(integrand, x, R, q, cuts).value;
}

// T u(x, xi) rebuilt from the standard transform at (x, xi/<xi>) with h -> h/<xi>.
template <std::size_t N>
cplx fbi_via_standard(const SampledFunction<N>& u, const PhaseSpacePoint<N>& rho, const FbiParams& p) {
    const double jb = japanese<N>(rho.xi);
    Vec<N> omega{};
    for (std::size_t j = 0; j < N; ++j) omega[j] = rho.xi[j] / jb;
    return std::pow(jb, -0.5 * N) * standard_fbi(u, rho.x, omega, p.h / jb, p.quad);
}

// T_Lambda u(rho) = T u(x - i theta G_xi, xi + i theta G_x).
template <std::size_t N>
cplx deformed_fbi(const SampledFunction<N>& u, const PhaseSpacePoint<N>& rho, const DeformationField<N>& G,
                  double theta, const FbiParams& p) {
    return fbi_at(u, deform(rho, G, theta).point(), p);
}

// The escape weight G = Phi q_eps(xi1) as a deformation field.
template <std::size_t N>
DeformationField<N> weight_deformation(const WeightParams& wp) {
    wp.validate();
    return [wp](const PhaseSpacePoint<N>& rho) {
        const auto w = evaluate_weight(rho, wp);
        return DeformationJet<N>{w.G, w.dG_dx, w.dG_dxi};
    };
}

} // namespace microlocal
