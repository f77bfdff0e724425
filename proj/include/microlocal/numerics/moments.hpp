#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "errors.hpp"
#include "quadrature.hpp"

namespace microlocal {

inline constexpr int kMaxMomentOrder = 12;

// Quadrature value of the integral of tau^(2k) e^(-tau) over [0, inf); exactly (2k)!.
inline double exp_moment(int k, const QuadratureSpec& spec = {1e-13, 0.0, 50, 1e-16}) {
    if (k < 0) throw std::invalid_argument("exp_moment: k must be >= 0");
    if (k > kMaxMomentOrder)
        throw MomentOverflow("exp_moment: order " + std::to_string(k) + " exceeds " +
                             std::to_string(kMaxMomentOrder));
    const int p = 2 * k;
    auto f = [p](double tau) { return p == 0 ? std::exp(-tau) : std::exp(p * std::log(tau) - tau); };
    return integrate_decaying(f, {0.0, std::numeric_limits<double>::infinity()}, spec).value;
}

} // namespace microlocal
