#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "../numerics/quadrature.hpp"
#include "cutoff.hpp"

namespace microlocal {

namespace detail {

// Integrand of Q_s(V) = int_0^V [chi(v) + s (1 - chi(v)) / v] dv on the band [1, 2];
// s = +1 for t > 0 and s = -1 for the literal integral at t < 0.
inline double band_integrand(double v, double s) { return chi(v) + s * (1.0 - chi(v)) / v; }

inline double band_panel(double a, double b, double s) {
    auto f = [s](double v) { return band_integrand(v, s); };
    return gk21<double>(f, a, b, 0).value;
}

// Cumulative band integral on a uniform table, refined by one Kronrod panel.
class BandTable {
public:
    static constexpr int kCells = 1024;

    explicit BandTable(double s) : s_(s) {
        cum_[0] = 0.0;
        for (int j = 0; j < kCells; ++j)
            cum_[j + 1] = cum_[j] + band_panel(node(j), node(j + 1), s_);
    }

    // int_1^v of the band integrand, v in [1, 2].
    double operator()(double v) const {
        if (v <= 1.0) return 0.0;
        if (v >= 2.0) return cum_[kCells];
        int j = static_cast<int>((v - 1.0) * kCells);
        if (j >= kCells) j = kCells - 1;
        return cum_[j] + band_panel(node(j), v, s_);
    }

private:
    static double node(int j) { return 1.0 + static_cast<double>(j) / kCells; }
    double s_;
    std::array<double, kCells + 1> cum_{};
};

inline const BandTable& band_table(double s) {
    static const BandTable plus(1.0), minus(-1.0);
    return s > 0 ? plus : minus;
}

// Q_s(V) for V >= 0.
inline double Q_scaled(double V, double s) {
    if (V <= 1.0) return V;
    const auto& tab = band_table(s);
    if (V < 2.0) return 1.0 + tab(V);
    return 1.0 + tab(2.0) + s * std::log(V / 2.0);
}

} // namespace detail

// q_eps(t) = int_0^t [chi(eps s) + (1 - chi(eps s)) / (eps s)] ds.
inline double q_eps(double t, double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("q_eps: eps must lie in (0, 1]");
    if (t >= 0.0) return detail::Q_scaled(eps * t, 1.0) / eps;
    return -detail::Q_scaled(-eps * t, -1.0) / eps;
}

// d/dt q_eps(t), the integrand itself.
inline double q_eps_prime(double t, double eps) {
    if (t == 0.0) return 1.0;
    const double v = eps * t;
    const double c = chi(v);
    return c + (1.0 - c) / v;
}

} // namespace microlocal
