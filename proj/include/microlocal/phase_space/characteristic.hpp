#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "symbol.hpp"

namespace microlocal {

inline constexpr double kTwoPi = 6.28318530717958647692;

// Angles theta in [0, 2 pi) with p(x1, 0; cos theta, sin theta) = 0, for the
// Keldysh and Tricomi symbols on the cylinder {(x1, theta)}.
inline std::vector<double> characteristic_angles(SymbolKind kind, double x1) {
    std::vector<double> out;
    if (x1 > 0.0 || kind == SymbolKind::NormalForm) return out;
    const double a = std::atan(std::sqrt(-x1));
    // Keldysh: tan^2 theta = -x1.  Tricomi: cot^2 theta = -x1.
    const double base = kind == SymbolKind::Keldysh ? a : 0.5 * M_PI - a;
    for (double th : {base, M_PI - base, M_PI + base, kTwoPi - base}) {
        double t = std::fmod(th, kTwoPi);
        if (t < 0) t += kTwoPi;
        if (t >= kTwoPi) t -= kTwoPi;
        out.push_back(t + 0.0); // no negative zero
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(), [](double u, double v) { return std::abs(u - v) < 1e-14; }),
              out.end());
    if (out.size() > 1 && out.back() > kTwoPi - 1e-14 && out.front() < 1e-14) out.pop_back();
    return out;
}

struct CylinderVelocity {
    double dtheta_dt;
    double dx1_dt;
};

// Hamiltonian field projected to the cylinder at (x1, x2 = 0, xi = (cos, sin)).
inline CylinderVelocity cylinder_field(const SymbolSpec& s, double x1, double theta) {
    const PhaseSpacePoint<2> p{{x1, 0.0}, {std::cos(theta), std::sin(theta)}};
    const auto h = hamiltonian_field(s, p);
    const double k1 = p.xi[0], k2 = p.xi[1];
    return {(k1 * h.dxi[1] - k2 * h.dxi[0]) / (k1 * k1 + k2 * k2), h.dx[0]};
}

} // namespace microlocal

namespace microlocal {

struct BoundaryContact {
    double min_abs_x1 = INFINITY;
    double time_at_min = 0.0;
    bool xi1_changes_sign = false; // theta passes pi/2 or 3pi/2
    bool reached(double tol) const { return min_abs_x1 <= tol; }
};

// How close a sampled trajectory (uniform step dt) comes to {x1 = 0}.
inline BoundaryContact boundary_contact(const std::vector<PhaseSpacePoint<2>>& traj, double dt) {
    BoundaryContact c;
    double last = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double a = std::abs(traj[i].x[0]);
        if (a < c.min_abs_x1) {
            c.min_abs_x1 = a;
            c.time_at_min = i * dt;
        }
        const double k = traj[i].xi[0];
        if (k != 0.0) {
            if (last * k < 0.0) c.xi1_changes_sign = true;
            last = k;
        }
    }
    return c;
}

} // namespace microlocal
