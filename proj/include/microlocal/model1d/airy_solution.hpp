#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "../numerics/airy.hpp"
#include "../numerics/moments.hpp"
#include "../numerics/quadrature.hpp"

namespace microlocal {

// e^{-tau} < 3e-20 beyond this cut.
inline constexpr double kAiryTauMax = 45.0;

inline QuadratureSpec airy_solution_spec() { return {1e-13, 0.0, 50, 1e-16}; }

// u(x1, x2) = int_0^inf Ai(tau^{4/3} x1) e^{i tau^2 x2} e^{-tau} d tau, truncated at tau = 45.
inline cplx airy_solution(double x1, double x2, const QuadratureSpec& spec = airy_solution_spec()) {
    if (!(std::abs(x1) <= 10.0 && std::abs(x2) <= 10.0))
        throw std::invalid_argument("airy_solution: requires |x1|, |x2| <= 10");
    if (x2 == 0.0) {
        auto f = [x1](double t) { return airy_ai(std::pow(t, 4.0 / 3.0) * x1) * std::exp(-t); };
        return integrate_gk(f, 0.0, kAiryTauMax, spec).value;
    }
    auto f = [x1, x2](double t) {
        return airy_ai(std::pow(t, 4.0 / 3.0) * x1) * std::exp(cplx(-t, t * t * x2));
    };
    return integrate_gk(f, 0.0, kAiryTauMax, spec).value;
}

inline constexpr int kMaxDerivativeOrder = 8;

// D_{x2}^k u(0, 0) = Ai(0) int tau^{2k} e^{-tau} d tau.
inline double derivative_growth(int k) {
    if (k < 0 || k > kMaxDerivativeOrder) throw std::invalid_argument("derivative_growth: requires 0 <= k <= 8");
    return airy_ai(0.0) * exp_moment(k);
}

namespace detail {

// Central difference for d^k/dx2^k u(0, x2) at x2 = 0, k = 1..3.
inline cplx central_x2(int k, double d) {
    auto u = [](double x2) { return airy_solution(0.0, x2); };
    switch (k) {
    case 1: return (u(d) - u(-d)) / (2.0 * d);
    case 2: return (u(d) - 2.0 * u(0.0) + u(-d)) / (d * d);
    case 3: return (u(2 * d) - 2.0 * u(d) + 2.0 * u(-d) - u(-2 * d)) / (2.0 * d * d * d);
    default: throw std::invalid_argument("central_x2: k must be 1, 2 or 3");
    }
}

} // namespace detail

// Independent check of D_{x2}^k u(0, 0) for k <= 3: finite differences of
// airy_solution with one Richardson step (d, d/2), times (-i)^k.
inline cplx derivative_fd(int k, double d = 1e-3) {
    if (k == 0) return airy_solution(0.0, 0.0);
    const cplx a = detail::central_x2(k, d), b = detail::central_x2(k, 0.5 * d);
    return std::pow(cplx(0.0, -1.0), k) * (4.0 * b - a) / 3.0;
}

struct TricomiResidual {
    cplx residual; // (D_{x1}^2 + x1 D_{x2}^2) u
    double scale;  // |u| + |d^2_{x1} u| + |x1 d^2_{x2} u|
};

// Five-point second differences in x1 and x2, one Richardson step (d, d/2).
inline TricomiResidual tricomi_residual(double x1, double x2, double d = 1e-3) {
    auto second = [](auto&& u, double s) {
        return (-u(2 * s) + 16.0 * u(s) - 30.0 * u(0.0) + 16.0 * u(-s) - u(-2 * s)) / (12.0 * s * s);
    };
    auto ux1 = [&](double s) { return airy_solution(x1 + s, x2); };
    auto ux2 = [&](double s) { return airy_solution(x1, x2 + s); };
    const cplx d11 = (64.0 * second(ux1, 0.5 * d) - second(ux1, d)) / 63.0;
    const cplx d22 = (64.0 * second(ux2, 0.5 * d) - second(ux2, d)) / 63.0;
    // D^2 = -d^2.
    return {-d11 - x1 * d22, std::abs(airy_solution(x1, x2)) + std::abs(d11) + std::abs(x1 * d22)};
}

} // namespace microlocal
