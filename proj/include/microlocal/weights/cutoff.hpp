#pragma once

#include <cmath>

namespace microlocal {

namespace detail {
inline double bump_s(double r) { return r > 0.0 ? std::exp(-1.0 / r) : 0.0; }
inline double bump_ds(double r) { return r > 0.0 ? std::exp(-1.0 / r) / (r * r) : 0.0; }
} // namespace detail

// Smooth even cutoff: 1 on [-1, 1], 0 outside (-2, 2), monotone in |t|.
inline double chi(double t) {
    const double r = std::abs(t);
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double a = detail::bump_s(2.0 - r), b = detail::bump_s(r - 1.0);
    return a / (a + b);
}

inline double chi_prime(double t) {
    const double r = std::abs(t);
    if (r <= 1.0 || r >= 2.0) return 0.0;
    const double a = detail::bump_s(2.0 - r), b = detail::bump_s(r - 1.0);
    const double da = -detail::bump_ds(2.0 - r), db = detail::bump_ds(r - 1.0);
    const double d = (da * b - a * db) / ((a + b) * (a + b));
    return t > 0 ? d : -d;
}

// phi(t) = chi(t / delta)
inline double phi(double t, double delta) { return chi(t / delta); }
inline double phi_prime(double t, double delta) { return chi_prime(t / delta) / delta; }

} // namespace microlocal
