#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "../numerics/errors.hpp"
#include "symbol.hpp"

namespace microlocal {

enum class LagrangianSign { Plus, Minus };

template <std::size_t N>
struct LagrangianSample {
    std::vector<PhaseSpacePoint<N>> points;
    LagrangianSign sign = LagrangianSign::Plus;
};

// Samples of the Keldysh components {x1 = 0, xi2 = 0, +-xi1 > 0}.
inline LagrangianSample<2> keldysh_lagrangian(LagrangianSign sign, const std::vector<double>& xi1_abs,
                                              const std::vector<double>& x2 = {0.0}) {
    LagrangianSample<2> s;
    s.sign = sign;
    const double sg = sign == LagrangianSign::Plus ? 1.0 : -1.0;
    for (double x : x2)
        for (double k : xi1_abs) s.points.push_back({{0.0, x}, {sg * k, 0.0}});
    return s;
}

inline constexpr double kRadialTolerance = 1e-12;

struct RadialReport {
    double max_symbol_value = 0.0;
    double max_non_parallelism = 0.0; // |H_p ^ R| / (|H_p| |R|), R = xi . d_xi
    double min_dp_norm = std::numeric_limits<double>::infinity();
    double min_factor = std::numeric_limits<double>::infinity();
    double max_factor = -std::numeric_limits<double>::infinity();
    bool contained = false;      // |p| <= tol on every sample
    bool parallel = false;       // wedge <= tol on every sample
    bool positivity = false;     // proportionality factor > 0 everywhere
    int factor_sign = 0;         // +1 or -1 if constant, 0 otherwise

    // Radial for p itself, or for -p when only the sign is off.
    bool radial() const { return contained && parallel && min_dp_norm > 0.0 && factor_sign != 0; }
};

template <std::size_t N>
RadialReport check_radial(const SymbolSpec& s, const LagrangianSample<N>& lam) {
    if (lam.points.empty()) throw EmptySample("check_radial: empty Lagrangian sample");
    RadialReport r;
    bool all_pos = true, all_neg = true;
    for (const auto& p : lam.points) {
        r.max_symbol_value = std::max(r.max_symbol_value, std::abs(eval_symbol(s, p)));
        const auto h = hamiltonian_field(s, p);
        // dp = (d_x p, d_xi p) = (-h.dxi, h.dx), same norm as H_p.
        std::array<double, 2 * N> H{}, R{};
        for (std::size_t i = 0; i < N; ++i) {
            H[i] = h.dx[i];
            H[N + i] = h.dxi[i];
            R[N + i] = p.xi[i];
        }
        double hh = 0.0, rr = 0.0, hr = 0.0, wedge = 0.0;
        for (std::size_t i = 0; i < 2 * N; ++i) {
            hh += H[i] * H[i];
            rr += R[i] * R[i];
            hr += H[i] * R[i];
            for (std::size_t j = i + 1; j < 2 * N; ++j) {
                const double w = H[i] * R[j] - H[j] * R[i];
                wedge += w * w;
            }
        }
        r.min_dp_norm = std::min(r.min_dp_norm, std::sqrt(hh));
        const double denom = std::sqrt(hh * rr);
        r.max_non_parallelism = std::max(r.max_non_parallelism, denom > 0 ? std::sqrt(wedge) / denom : 1.0);
        const double factor = rr > 0 ? hr / rr : 0.0;
        r.min_factor = std::min(r.min_factor, factor);
        r.max_factor = std::max(r.max_factor, factor);
        all_pos = all_pos && factor > 0;
        all_neg = all_neg && factor < 0;
    }
    r.contained = r.max_symbol_value <= kRadialTolerance;
    r.parallel = r.max_non_parallelism <= kRadialTolerance;
    r.factor_sign = all_pos ? 1 : (all_neg ? -1 : 0);
    r.positivity = all_pos;
    return r;
}

} // namespace microlocal
