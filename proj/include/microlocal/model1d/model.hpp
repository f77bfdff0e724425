#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "../numerics/errors.hpp"
#include "../weights/cutoff.hpp"
#include "../weights/q_eps.hpp"
#include "fourier_grid.hpp"

namespace microlocal {

// Which half-line carries the weight: the literal G_eps lives on xi > 0; the
// mirror G_eps(-xi) handles xi < 0.
enum class WeightSide { Positive, Negative, Both };

// G_eps(xi) = (1 - chi(xi)) int_0^xi [chi(eps t) + (1 - chi(eps t)) / (eps t)] dt for xi > 0.
inline double model_weight(double xi, double eps, WeightSide side = WeightSide::Positive) {
    double t = xi;
    if (side == WeightSide::Negative) t = -xi;
    if (side == WeightSide::Both) t = std::abs(xi);
    if (t <= 1.0) return 0.0;
    return (1.0 - chi(t)) * q_eps(t, eps);
}

inline double model_weight_prime(double xi, double eps, WeightSide side = WeightSide::Positive) {
    double t = xi, s = 1.0;
    if (side == WeightSide::Negative) t = -xi, s = -1.0;
    if (side == WeightSide::Both && xi < 0.0) t = -xi, s = -1.0;
    if (t <= 1.0) return 0.0;
    return s * (-chi_prime(t) * q_eps(t, eps) + (1.0 - chi(t)) * q_eps_prime(t, eps));
}

struct ModelParams {
    cplx a = 0.0;
    double tau = 1.0;
    std::vector<double> eps_sweep = {0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125};

    // M = max(-Im a + 1, 2).
    double M() const { return std::max(-a.imag() + 1.0, 2.0); }

    void validate() const {
        if (!(tau > 0.0)) throw std::invalid_argument("ModelParams: tau must be positive");
        for (double e : eps_sweep)
            if (!(e > 0.0 && e < 1.0 / M()))
                throw std::invalid_argument("ModelParams: every eps must satisfy 0 < eps < 1/M");
    }
};

// e^{G(D)} v: multiplies the transform by e^{G(xi_k)} and re-synthesizes.
inline FourierGrid apply_multiplier(const FourierGrid& g, const std::function<double(double)>& G) {
    std::vector<cplx> h(g.hat());
    for (std::size_t k = 0; k < h.size(); ++k) {
        const double xi = g.xi(k);
        if (h[k] == 0.0) continue;
        const double lg = G(xi) + std::log(std::abs(h[k]));
        if (!(lg < 700.0)) throw MultiplierOverflow("apply_multiplier: e^G |v^| overflows", xi);
        h[k] *= std::exp(G(xi));
    }
    FourierGrid out(g);
    out.set_hat(std::move(h));
    return out;
}

struct EnergyIdentity {
    double lhs = 0.0;   // Im <P_eps v_eps, v_eps>, operator applied on the grid
    double rhs = 0.0;   // <(xi^2 G' + (Im a + 1) xi) v^, v^> with dxi / 2 pi
    double scale = 0.0; // same form with absolute values of the multiplier
    double mismatch() const { return std::abs(lhs - rhs) / std::max(std::abs(rhs), scale); }
};

inline constexpr double kBoundaryLeakFloor = 1e-12;

// P_eps = x1 D^2 + i G'(D) D^2 + a D + tau^2, applied to the samples of v_eps.
inline EnergyIdentity energy_identity(const FourierGrid& v, const ModelParams& p,
                                      const std::function<double(double)>& Gprime) {
    const auto& val = v.values();
    double peak = 0.0;
    for (const auto& c : val) peak = std::max(peak, std::abs(c));
    if (std::max(std::abs(val.front()), std::abs(val.back())) > kBoundaryLeakFloor * peak)
        throw BoundaryLeak("energy_identity: samples at the box edge above floor");

    const cplx i(0.0, 1.0);
    const auto d2 = v.multiplier_values([](double xi) { return cplx(xi * xi); });
    const auto rest = v.multiplier_values([&](double xi) { return i * Gprime(xi) * xi * xi + p.a * xi; });
    cplx ip = 0.0;
    for (std::size_t j = 0; j < val.size(); ++j) {
        const cplx Pv = v.x(j) * d2[j] + rest[j] + p.tau * p.tau * val[j];
        ip += Pv * std::conj(val[j]);
    }
    EnergyIdentity e;
    e.lhs = (ip * v.dx()).imag();
    const auto& h = v.hat();
    for (std::size_t k = 0; k < h.size(); ++k) {
        const double xi = v.xi(k), g = Gprime(xi);
        const double n2 = std::norm(h[k]);
        e.rhs += (xi * xi * g + (p.a.imag() + 1.0) * xi) * n2;
        e.scale += (xi * xi * std::abs(g) + (std::abs(p.a.imag()) + 1.0) * std::abs(xi)) * n2;
    }
    const double w = v.dxi() / (2.0 * M_PI);
    e.rhs *= w;
    e.scale *= w;
    return e;
}

// The cutoff chi is C^inf but not analytic, so e^{G_eps(D)} v decays in x only
// like e^{-c sqrt|x|}; the identity check needs a much wider box than the solver.
inline constexpr std::size_t kEnergyGridN = 32768;
inline constexpr double kEnergyGridL = 512.0;

// Test profile: v^ = sqrt(2 pi) e^{-(xi-1)^2/2} e^{-0.3 i (xi-1)}, spectrum straddling the cutoff.
inline FourierGrid energy_test_profile(std::size_t n = kEnergyGridN, double L = kEnergyGridL) {
    return FourierGrid::from_hat(n, L, [](double xi) {
        const double s = xi - 1.0;
        return std::sqrt(2.0 * M_PI) * std::exp(-0.5 * s * s) * std::exp(cplx(0.0, -0.3 * s));
    });
}

struct EnergyRow {
    double eps = 0.0;
    EnergyIdentity e;
};

// Energy identity for v_eps = e^{G_eps(D)} v over the eps sweep of p.
inline std::vector<EnergyRow> energy_identity_sweep(const ModelParams& p, const FourierGrid& v) {
    p.validate();
    std::vector<EnergyRow> rows;
    for (double eps : p.eps_sweep) {
        const FourierGrid ve = apply_multiplier(v, [eps](double xi) { return model_weight(xi, eps); });
        rows.push_back({eps, energy_identity(ve, p, [eps](double xi) { return model_weight_prime(xi, eps); })});
    }
    return rows;
}

// Right-hand side of (x1 D^2 + a D + tau^2) v = f, given on the Fourier side.
struct Forcing {
    std::function<cplx(double)> fhat;
    std::function<cplx(double)> vhat_exact; // optional, for manufactured data
};

// f = P v for v = e^{-x^2/2}: f^ = i (xi^2 v^)' + (a xi + tau^2) v^, v^ = sqrt(2 pi) e^{-xi^2/2}.
inline Forcing manufactured_gaussian_forcing(cplx a, double tau) {
    auto vh = [](double xi) { return cplx(std::sqrt(2.0 * M_PI) * std::exp(-0.5 * xi * xi)); };
    auto fh = [a, tau, vh](double xi) {
        return cplx(0.0, 1.0) * (2.0 * xi - xi * xi * xi) * vh(xi) + (a * xi + tau * tau) * vh(xi);
    };
    return {fh, vh};
}

// Fourier side: i (xi^2 v^)' + (a xi + tau^2) v^ = f^. With mu = |xi|^{2 - i a} e^{i tau^2/xi},
// (mu v^)' = mu f^ / (i xi^2); mu v^ is marched (4th order) from each end of the
// frequency box towards xi = 0 starting from zero, and v^(0) = f^(0) / tau^2.
inline FourierGrid solve_model(const ModelParams& p, const Forcing& f, std::size_t n, double L) {
    if (!(p.tau > 0.0)) throw std::invalid_argument("solve_model: tau must be positive");
    FourierGrid g(n, L);
    const cplx i(0.0, 1.0);
    const double t2 = p.tau * p.tau;
    auto mu = [&](double xi) { return std::exp((2.0 - i * p.a) * std::log(std::abs(xi)) + i * t2 / xi); };
    auto rhs = [&](double xi) { return mu(xi) * f.fhat(xi) / (i * xi * xi); };

    std::vector<cplx> h(n);
    const std::size_t mid = n / 2;
    h[mid] = f.fhat(0.0) / t2;
    const double dxi = g.dxi();
    auto march = [&](std::size_t from, std::size_t to, int dir) {
        cplx w = 0.0;
        h[from] = 0.0;
        double xi = g.xi(from);
        for (std::size_t k = from; k != to; k = dir > 0 ? k + 1 : k - 1) {
            const std::size_t next = dir > 0 ? k + 1 : k - 1;
            const double lo = std::min(std::abs(g.xi(k)), std::abs(g.xi(next)));
            const double omega = t2 / (lo * lo) + std::abs(p.a) / lo + 1.0 + lo;
            const int m = std::max(4, static_cast<int>(std::ceil(dxi * omega / 0.02)));
            const double s = dir * dxi / m;
            for (int j = 0; j < m; ++j) {
                w += s / 6.0 * (rhs(xi) + 4.0 * rhs(xi + 0.5 * s) + rhs(xi + s));
                xi += s;
            }
            xi = g.xi(next);
            h[next] = w / mu(xi);
            if (!std::isfinite(h[next].real()) || !std::isfinite(h[next].imag()))
                throw SolverDiverged("solve_model: non-finite value at xi = " + std::to_string(xi));
        }
    };
    march(n - 1, mid + 1, -1);
    march(0, mid - 1, +1);
    g.set_hat(std::move(h));
    return g;
}

struct UniformBoundRow {
    double eps = 0.0;
    double norm_v_hat = 0.0;        // || e^{G_eps} v^ ||, literal weight on xi > 0
    double norm_v_hat_mirror = 0.0; // mirrored weight on xi < 0
    double norm_f_eps = 0.0;
    double bound = 0.0;             // C0 + C1
};

struct UniformBoundTable {
    std::vector<UniformBoundRow> rows;
    double M = 0.0, C0 = 0.0, C1 = 0.0;
    double h1_norm = 0.0;
    double solve_error = -1.0; // sup |v^ - v^_exact| / sup |v^_exact| when known
};

inline double weighted_hat_norm(const FourierGrid& g, const std::vector<cplx>& h,
                                const std::function<double(double)>& G) {
    double s = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k)
        if (h[k] != 0.0) s += std::exp(2.0 * G(g.xi(k)) + 2.0 * std::log(std::abs(h[k])));
    return std::sqrt(s * g.dxi() / (2.0 * M_PI));
}

// Solve once, then tabulate || v^_eps || over the eps sweep against C0 + C1 with
// C0 = || e^{|xi|} f^ || (>= || f_eps || for every eps since G_eps <= |xi|) and
// C1 = (|Im a| + 1) e^M || v ||_{H^1}.
inline UniformBoundTable uniform_bound_experiment(const ModelParams& p, const Forcing& f, std::size_t n = 4096,
                                                  double L = 20.0) {
    p.validate();
    const FourierGrid v = solve_model(p, f, n, L);
    UniformBoundTable t;
    t.M = p.M();
    std::vector<cplx> fh(n);
    for (std::size_t k = 0; k < n; ++k) fh[k] = f.fhat(v.xi(k));
    t.C0 = weighted_hat_norm(v, fh, [](double xi) { return std::abs(xi); });
    t.h1_norm = weighted_hat_norm(v, v.hat(), [](double xi) { return 0.5 * std::log1p(xi * xi); });
    t.C1 = (std::abs(p.a.imag()) + 1.0) * std::exp(t.M) * t.h1_norm;
    if (f.vhat_exact) {
        double err = 0.0, top = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const cplx e = f.vhat_exact(v.xi(k));
            err = std::max(err, std::abs(v.hat()[k] - e));
            top = std::max(top, std::abs(e));
        }
        t.solve_error = err / top;
    }
    for (double eps : p.eps_sweep) {
        UniformBoundRow r;
        r.eps = eps;
        r.norm_v_hat = weighted_hat_norm(v, v.hat(), [eps](double xi) { return model_weight(xi, eps); });
        r.norm_v_hat_mirror = weighted_hat_norm(
            v, v.hat(), [eps](double xi) { return model_weight(xi, eps, WeightSide::Negative); });
        r.norm_f_eps = weighted_hat_norm(v, fh, [eps](double xi) { return model_weight(xi, eps); });
        r.bound = t.C0 + t.C1;
        t.rows.push_back(r);
    }
    return t;
}

} // namespace microlocal
