#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "transform.hpp"

namespace microlocal {

struct GridAxis {
    double lo = 0.0;
    double step = 1.0;
    int count = 1;
    double at(int k) const { return lo + step * k; }
    double hi() const { return at(count - 1); }
};

inline GridAxis symmetric_axis(double half_width, double step) {
    const int n = static_cast<int>(std::lround(2.0 * half_width / step)) + 1;
    return {-half_width, step, n};
}

// Samples v(x_i, xi_k) of a function on T*R, stored x-major.
struct PhaseGrid {
    GridAxis x, xi;
    std::vector<cplx> values;

    cplx& operator()(int i, int k) { return values[static_cast<std::size_t>(i) * xi.count + k]; }
    const cplx& operator()(int i, int k) const { return values[static_cast<std::size_t>(i) * xi.count + k]; }
};

// Default box for the n = 1 roundtrip at h = 0.1: x in [-9, 9], xi in [-7, 7], step 0.1.
inline PhaseGrid default_phase_grid() { return {symmetric_axis(9.0, 0.1), symmetric_axis(7.0, 0.1), {}}; }

inline PhaseGrid sample_transform(const SampledFunction<1>& u, PhaseGrid g, const FbiParams& p) {
    g.values.assign(static_cast<std::size_t>(g.x.count) * g.xi.count, 0.0);
    for (int i = 0; i < g.x.count; ++i)
        for (int k = 0; k < g.xi.count; ++k) g(i, k) = fbi_transform<1>(u, {{g.x.at(i)}, {g.xi.at(k)}}, p);
    return g;
}

inline constexpr double kGridBoundaryFloor = 1e-12;

// Largest boundary sample relative to the largest sample.
inline double boundary_ratio(const PhaseGrid& g) {
    double peak = 0.0, edge = 0.0;
    for (int i = 0; i < g.x.count; ++i)
        for (int k = 0; k < g.xi.count; ++k) {
            const double a = std::abs(g(i, k));
            peak = std::max(peak, a);
            if (i == 0 || k == 0 || i == g.x.count - 1 || k == g.xi.count - 1) edge = std::max(edge, a);
        }
    return peak > 0.0 ? edge / peak : 0.0;
}

// S v(y) for n = 1, trapezoidal rule over the grid. The amplitude is
// 1 + (i/2)(y - x) xi/<xi>: with this sign S T = I exactly.
inline cplx fbi_inverse(const PhaseGrid& v, double y, const FbiParams& p) {
    p.validate();
    if (v.values.size() != static_cast<std::size_t>(v.x.count) * v.xi.count)
        throw std::invalid_argument("fbi_inverse: grid values do not match axes");
    if (boundary_ratio(v) > kGridBoundaryFloor)
        throw GridTooNarrow("fbi_inverse: transform above floor on the grid boundary");
    const double h = p.h;
    const cplx i(0.0, 1.0);
    cplx sum = 0.0;
    for (int k = 0; k < v.xi.count; ++k) {
        const double xi = v.xi.at(k), jb = japanese(xi);
        const double wk = (k == 0 || k == v.xi.count - 1) ? 0.5 : 1.0;
        cplx row = 0.0;
        for (int j = 0; j < v.x.count; ++j) {
            const cplx val = v(j, k);
            if (val == 0.0) continue;
            const double d = v.x.at(j) - y;
            const double env = -jb * d * d / (2.0 * h);
            if (env < -2.0 * kEnvelopeExponent) continue;
            const double wj = (j == 0 || j == v.x.count - 1) ? 0.5 : 1.0;
            row += wj * std::exp(env) * std::polar(1.0, -d * xi / h) * (1.0 - 0.5 * i * d * xi / jb) * val;
        }
        sum += wk * std::pow(jb, 0.25) * row;
    }
    const double c = std::sqrt(2.0) * std::pow(h, -0.75) / std::pow(2.0 * M_PI, 1.5);
    return c * v.x.step * v.xi.step * sum;
}

} // namespace microlocal
