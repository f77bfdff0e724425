#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "../numerics/errors.hpp"
#include "../numerics/quadrature.hpp"
#include "../phase_space/point.hpp"

namespace microlocal {

struct FbiParams {
    double h = 0.1;
    QuadratureSpec quad{1e-11, 0.0, 50, 1e-16};

    void validate() const {
        if (!(h > 0.0 && h <= 1.0)) throw std::invalid_argument("FbiParams: h must lie in (0, 1]");
        quad.validate();
    }
};

enum class Analyticity { Analytic, SingularAt, Unknown };

// u : R^N -> C. The hint is test metadata; for N = 1 the singular points are
// also handed to the quadrature as breakpoints.
template <std::size_t N>
struct SampledFunction {
    std::function<cplx(const Vec<N>&)> evaluator;
    Analyticity hint = Analyticity::Unknown;
    std::vector<double> singular_points{};

    cplx operator()(const Vec<N>& y) const { return evaluator(y); }
};

template <std::size_t N>
using CVec = std::array<cplx, N>;

// A point of C^{2N}; real phase-space points embed with zero imaginary part.
template <std::size_t N>
struct ComplexPoint {
    CVec<N> x{};
    CVec<N> xi{};
};

template <std::size_t N>
ComplexPoint<N> complexify(const PhaseSpacePoint<N>& rho) {
    ComplexPoint<N> z;
    for (std::size_t j = 0; j < N; ++j) {
        z.x[j] = rho.x[j];
        z.xi[j] = rho.xi[j];
    }
    return z;
}

// Value and gradients of the (already scaled) deformation function at a real point.
template <std::size_t N>
struct DeformationJet {
    double G = 0.0;
    Vec<N> Gx{};
    Vec<N> Gxi{};
};

template <std::size_t N>
using DeformationField = std::function<DeformationJet<N>(const PhaseSpacePoint<N>&)>;

// alpha = (x - i G_xi, xi + i G_x) on Lambda_G.
template <std::size_t N>
struct DeformedPoint {
    PhaseSpacePoint<N> base{};
    Vec<N> Gx{};
    Vec<N> Gxi{};

    ComplexPoint<N> point() const {
        ComplexPoint<N> a;
        for (std::size_t j = 0; j < N; ++j) {
            a.x[j] = cplx(base.x[j], -Gxi[j]);
            a.xi[j] = cplx(base.xi[j], Gx[j]);
        }
        return a;
    }
};

template <std::size_t N>
DeformedPoint<N> deform(const PhaseSpacePoint<N>& rho, const DeformationField<N>& G, double theta) {
    DeformedPoint<N> d{rho, {}, {}};
    if (theta == 0.0 || !G) return d;
    const auto j = G(rho);
    for (std::size_t k = 0; k < N; ++k) {
        d.Gx[k] = theta * j.Gx[k];
        d.Gxi[k] = theta * j.Gxi[k];
    }
    return d;
}

// <zeta> = sqrt(1 + zeta . zeta) (bilinear, principal branch).
template <std::size_t N>
cplx japanese(const CVec<N>& z) {
    cplx s = 1.0;
    for (const auto& c : z) s += c * c;
    if (!(s.real() > 0.0)) throw BranchCut("complex Japanese bracket: Re(1 + zeta^2) <= 0");
    return std::sqrt(s);
}

template <std::size_t N>
cplx dot(const CVec<N>& a, const CVec<N>& b) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < N; ++j) s += a[j] * b[j];
    return s;
}

} // namespace microlocal
