#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "params.hpp"

namespace microlocal {

// Two-point phase of the T S_Lambda kernel:
//   Psi = (i/2)(a_xi - b_xi)^2/(<a> + <b>) + (i/2)<a><b>(a_x - b_x)^2/(<a> + <b>)
//         + (<b> a_xi + <a> b_xi)/(<a> + <b>) . (a_x - b_x).
template <std::size_t N>
cplx phase_Psi(const ComplexPoint<N>& a, const ComplexPoint<N>& b) {
    const cplx ja = japanese<N>(a.xi), jb = japanese<N>(b.xi);
    const cplx s = ja + jb;
    const cplx i(0.0, 1.0);
    cplx dxi2 = 0.0, dx2 = 0.0, mix = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        const cplx dk = a.xi[j] - b.xi[j], dx = a.x[j] - b.x[j];
        dxi2 += dk * dk;
        dx2 += dx * dx;
        mix += (jb * a.xi[j] + ja * b.xi[j]) * dx;
    }
    return (0.5 * i * dxi2 + 0.5 * i * ja * jb * dx2 + mix) / s;
}

template <std::size_t N>
cplx phase_Psi(const PhaseSpacePoint<N>& a, const PhaseSpacePoint<N>& b) {
    return phase_Psi(complexify(a), complexify(b));
}

// y_c = (<a_xi> a_x + <b_xi> b_x + i(b_xi - a_xi)) / (<a_xi> + <b_xi>).
template <std::size_t N>
CVec<N> critical_point_y(const ComplexPoint<N>& a, const ComplexPoint<N>& b) {
    const cplx ja = japanese<N>(a.xi), jb = japanese<N>(b.xi);
    CVec<N> y{};
    for (std::size_t j = 0; j < N; ++j)
        y[j] = (ja * a.x[j] + jb * b.x[j] + cplx(0.0, 1.0) * (b.xi[j] - a.xi[j])) / (ja + jb);
    return y;
}

// Phase of the y-integrand of T S: <a_x - y, a_xi> + (i/2)<a_xi>(a_x - y)^2
//   - <b_x - y, b_xi> + (i/2)<b_xi>(b_x - y)^2, and its y-gradient.
template <std::size_t N>
cplx kernel_y_phase(const ComplexPoint<N>& a, const ComplexPoint<N>& b, const CVec<N>& y) {
    const cplx ja = japanese<N>(a.xi), jb = japanese<N>(b.xi);
    const cplx i(0.0, 1.0);
    cplx f = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        const cplx da = a.x[j] - y[j], db = b.x[j] - y[j];
        f += da * a.xi[j] + 0.5 * i * ja * da * da - db * b.xi[j] + 0.5 * i * jb * db * db;
    }
    return f;
}

template <std::size_t N>
CVec<N> kernel_y_gradient(const ComplexPoint<N>& a, const ComplexPoint<N>& b, const CVec<N>& y) {
    const cplx ja = japanese<N>(a.xi), jb = japanese<N>(b.xi);
    const cplx i(0.0, 1.0);
    CVec<N> g{};
    for (std::size_t j = 0; j < N; ++j)
        g[j] = -a.xi[j] - i * ja * (a.x[j] - y[j]) + b.xi[j] - i * jb * (b.x[j] - y[j]);
    return g;
}

// H = theta (xi . G_xi - G) for the scaled deformation theta G.
template <std::size_t N>
double canonical_weight(const PhaseSpacePoint<N>& b, const DeformationJet<N>& j, double theta) {
    double s = 0.0;
    for (std::size_t k = 0; k < N; ++k) s += b.xi[k] * j.Gxi[k];
    return theta * (s - j.G);
}

template <std::size_t N>
struct EffectivePsi {
    double value = 0.0;           // psi(alpha)
    PhaseSpacePoint<N> maximizer; // parameter b of beta_c on Lambda
    int evaluations = 0;
};

// psi(alpha) = -max_b (-Im Psi(alpha, beta(b)) + H(b)), beta(b) in Lambda_{theta G}.
// The outer sign fixes the deformation convention so that psi = theta G + O(theta^2)
// (the maximum itself equals -theta G to first order).
// Compass search on a shrinking stencil inside the box |b_x - x| <= r,
// |b_xi - xi| <= r <xi>, with r = 4 theta max(1, |G|_{S^1} at alpha).
template <std::size_t N>
EffectivePsi<N> effective_psi(const PhaseSpacePoint<N>& alpha, const DeformationField<N>& G, double theta) {
    EffectivePsi<N> out;
    out.maximizer = alpha;
    if (theta == 0.0 || !G) return out;
    if (!(theta > 0.0)) throw std::invalid_argument("effective_psi: theta must be positive");

    const ComplexPoint<N> a = complexify(alpha);
    auto objective = [&](const PhaseSpacePoint<N>& b) {
        ++out.evaluations;
        const auto j = G(b);
        DeformedPoint<N> d{b, {}, {}};
        for (std::size_t k = 0; k < N; ++k) {
            d.Gx[k] = theta * j.Gx[k];
            d.Gxi[k] = theta * j.Gxi[k];
        }
        return -phase_Psi(a, d.point()).imag() + canonical_weight(b, j, theta);
    };

    const double jb = japanese<N>(alpha.xi);
    const auto j0 = G(alpha);
    double seminorm = std::abs(j0.G) / jb;
    for (std::size_t k = 0; k < N; ++k)
        seminorm = std::max({seminorm, std::abs(j0.Gx[k]) / jb, std::abs(j0.Gxi[k])});
    const double r = 4.0 * theta * std::max(1.0, seminorm);
    const double scale[2] = {1.0, jb};

    PhaseSpacePoint<N> b = alpha;
    double best = objective(b);
    double step = 0.25 * r;
    const double stop = 1e-9 * r;
    while (step > stop) {
        bool moved = false;
        for (int part = 0; part < 2; ++part)
            for (std::size_t k = 0; k < N; ++k)
                for (double dir : {1.0, -1.0}) {
                    PhaseSpacePoint<N> c = b;
                    auto& coord = part == 0 ? c.x[k] : c.xi[k];
                    coord += dir * step * scale[part];
                    const double v = objective(c);
                    if (v > best) {
                        best = v;
                        b = c;
                        moved = true;
                    }
                }
        if (!moved) step *= 0.5;
        for (std::size_t k = 0; k < N; ++k)
            if (std::abs(b.x[k] - alpha.x[k]) > r || std::abs(b.xi[k] - alpha.xi[k]) > r * jb)
                throw MaximizerEscaped("effective_psi: maximizer left the trust region");
        if (out.evaluations > 200000) throw MaximizerEscaped("effective_psi: search did not settle");
    }
    out.value = -best;
    out.maximizer = b;
    return out;
}

} // namespace microlocal
