#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace microlocal {

template <std::size_t N>
using Vec = std::array<double, N>;

// (x, xi) in T*R^N.
template <std::size_t N>
struct PhaseSpacePoint {
    static_assert(N == 1 || N == 2, "phase space dimension must be 1 or 2");
    Vec<N> x{};
    Vec<N> xi{};
};

template <std::size_t N>
double norm(const Vec<N>& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

// Japanese bracket <v> = sqrt(1 + |v|^2).
template <std::size_t N>
double japanese(const Vec<N>& v) {
    double s = 1.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

inline double japanese(double v) { return std::sqrt(1.0 + v * v); }

} // namespace microlocal
