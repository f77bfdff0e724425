#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "../numerics/errors.hpp"
#include "weight.hpp"

namespace microlocal {

inline std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

inline std::vector<double> lin_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    if (n == 1) {
        g[0] = 0.5 * (lo + hi);
        return g;
    }
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    return g;
}

struct QInequalityCheck {
    double max_sandwich_violation = 0.0; // eps^-1 (1 + log) <= q <= eps^-1 (2 + log) above 1/eps, q = t below
    double max_lower_line_violation = 0.0; // xi1 q' >= min(xi1, 1/eps)
    double max_xi1q_violation = 0.0;       // xi1 q' >= c2 q^2 / xi1
    int grid_size = 0;
};

// Violations are relative to max(1, |reference|); zero means the inequality holds.
inline QInequalityCheck check_q_inequalities(double eps, const std::vector<double>& grid, double c2 = 0.25) {
    QInequalityCheck c;
    c.grid_size = static_cast<int>(grid.size());
    for (double t : grid) {
        const double q = q_eps(t, eps), tq = t * q_eps_prime(t, eps);
        double lo, hi;
        if (t <= 1.0 / eps) {
            lo = hi = t;
        } else {
            lo = (1.0 + std::log(eps * t)) / eps;
            hi = (2.0 + std::log(eps * t)) / eps;
        }
        const double s = std::max(1.0, std::abs(q));
        c.max_sandwich_violation = std::max({c.max_sandwich_violation, (lo - q) / s, (q - hi) / s});
        const double m = std::min(t, 1.0 / eps);
        c.max_lower_line_violation = std::max(c.max_lower_line_violation, (m - tq) / std::max(1.0, m));
        c.max_xi1q_violation = std::max(c.max_xi1q_violation, (c2 * q * q / t - tq) / std::max(1.0, tq));
    }
    return c;
}

struct EscapeGrid {
    int n_xi1 = 200;
    double xi1_min = 0.0; // 0 means delta
    double xi1_max = 1e6;
    // Counts are chosen so the samples fall inside the cutoff transition bands.
    int n_x1 = 11;
    int n_x2 = 7;
    int n_cone = 11;         // xi2 / xi1 samples in [-2 delta, 2 delta]
    int seminorm_stride = 5; // xi1 thinning for the finite-difference table

    std::size_t size() const { return std::size_t(n_xi1) * n_x1 * n_x2 * n_cone; }
};

struct CertificationTarget {
    double M1 = 10.0;
    double gamma = 1.0;
    double k_step = 0.25;
    double k_max = 0.0; // 0 means 2 gamma M1
};

struct SeminormEntry {
    std::array<int, 2> alpha;
    std::array<int, 2> beta;
    double value;
    std::string label() const {
        char buf[32];
        std::snprintf(buf, sizeof buf, "a%d%d_b%d%d", alpha[0], alpha[1], beta[0], beta[1]);
        return buf;
    }
};

struct WeightReport {
    double eps = 0.0;
    double delta = 0.0;
    int grid_size = 0;
    double min_escape_ratio = std::numeric_limits<double>::infinity();
    std::string min_escape_point;
    double min_HpG = std::numeric_limits<double>::infinity();
    std::array<double, 3> min_HpPhi_terms{INFINITY, INFINITY, INFINITY};
    double log_bound_const = 0.0;
    double phi_ineq_c1 = std::numeric_limits<double>::infinity();
    std::vector<SeminormEntry> seminorm_table;
    double fd_crosscheck_max_rel = 0.0;
    double m1 = 0.0, gamma = 0.0;
    double m2 = 0.0;
    double m2_cap = 0.0; // M1 exp(2 gamma M1)
    double k_exp = 0.0;
};

namespace detail {

inline std::string point_string(const PhaseSpacePoint<2>& p) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "(x=(%.6g, %.6g), xi=(%.6g, %.6g))", p.x[0], p.x[1], p.xi[0], p.xi[1]);
    return buf;
}

inline double coord(const PhaseSpacePoint<2>& p, int i) { return i < 2 ? p.x[i] : p.xi[i - 2]; }
inline double& coord(PhaseSpacePoint<2>& p, int i) { return i < 2 ? p.x[i] : p.xi[i - 2]; }

// Second-order central finite differences of G in variables (x1, x2, xi1, xi2).
inline double fd_derivative(const PhaseSpacePoint<2>& p, const WeightParams& wp, const std::array<int, 4>& order,
                            const std::array<double, 4>& h) {
    std::vector<int> vars;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < order[i]; ++k) vars.push_back(i);
    auto G = [&](const PhaseSpacePoint<2>& q) { return weight_G(q, wp); };
    if (vars.empty()) return G(p);
    if (vars.size() == 1) {
        const int i = vars[0];
        auto a = p, b = p;
        coord(a, i) += h[i];
        coord(b, i) -= h[i];
        return (G(a) - G(b)) / (2 * h[i]);
    }
    const int i = vars[0], j = vars[1];
    if (i == j) {
        auto a = p, b = p;
        coord(a, i) += h[i];
        coord(b, i) -= h[i];
        return (G(a) - 2 * G(p) + G(b)) / (h[i] * h[i]);
    }
    auto pp = p, pm = p, mp = p, mm = p;
    coord(pp, i) += h[i], coord(pp, j) += h[j];
    coord(pm, i) += h[i], coord(pm, j) -= h[j];
    coord(mp, i) -= h[i], coord(mp, j) += h[j];
    coord(mm, i) -= h[i], coord(mm, j) -= h[j];
    return (G(pp) - G(pm) - G(mp) + G(mm)) / (4 * h[i] * h[j]);
}

inline std::vector<std::array<int, 4>> multi_indices_upto2() {
    std::vector<std::array<int, 4>> out;
    out.push_back({0, 0, 0, 0});
    for (int i = 0; i < 4; ++i) {
        std::array<int, 4> a{};
        a[i] = 1;
        out.push_back(a);
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            std::array<int, 4> a{};
            a[i] += 1;
            a[j] += 1;
            out.push_back(a);
        }
    return out;
}

} // namespace detail

// Certifies, on a log-spaced grid over supp Phi, the escape inequalities of the
// weight G = Phi q_eps for the normal form p = -x1 xi1 (m = 1 only).
inline WeightReport verify_escape(int m, const WeightParams& wp, const EscapeGrid& grid = {},
                                  const CertificationTarget& target = {}) {
    if (m != 1) throw std::invalid_argument("verify_escape: only m = 1 is supported");
    wp.validate();
    const double d = wp.delta;
    WeightReport rep;
    rep.eps = wp.eps;
    rep.delta = d;
    rep.grid_size = static_cast<int>(grid.size());
    rep.m1 = target.M1;
    rep.gamma = target.gamma;
    rep.m2_cap = target.M1 * std::exp(2.0 * target.gamma * target.M1);

    const auto xi1s = log_grid(grid.xi1_min > 0 ? grid.xi1_min : d, grid.xi1_max, grid.n_xi1);
    const auto x1s = lin_grid(-2 * d, 2 * d, grid.n_x1);
    const auto x2s = lin_grid(-2 * d, 2 * d, grid.n_x2);
    const auto cones = lin_grid(-2 * d, 2 * d, grid.n_cone);

    // (log(M1 - HpG) + gamma G, log <xi>) wherever HpG < M1.
    std::vector<std::pair<double, double>> constraints;
    std::vector<PhaseSpacePoint<2>> constraint_points;

    for (double k1 : xi1s) {
        const double q = q_eps(k1, wp.eps), dq = q_eps_prime(k1, wp.eps);
        for (double x1 : x1s)
            for (double x2 : x2s)
                for (double c : cones) {
                    const PhaseSpacePoint<2> p{{x1, x2}, {k1, c * k1}};
                    const auto w = evaluate_weight(p, wp, q, dq);
                    const double br = japanese(p.xi);
                    if (w.HpG < 0.0)
                        throw CertificationFailed("H_p G < 0", detail::point_string(p));
                    rep.min_HpG = std::min(rep.min_HpG, w.HpG);
                    rep.min_HpPhi_terms[0] = std::min(rep.min_HpPhi_terms[0], w.HpPhi_x1);
                    rep.min_HpPhi_terms[1] = std::min(rep.min_HpPhi_terms[1], w.HpPhi_cone);
                    rep.min_HpPhi_terms[2] = std::min(rep.min_HpPhi_terms[2], w.HpPhi_low);

                    double gxi = 0, gx = 0, pxi = 0, px = 0;
                    for (int i = 0; i < 2; ++i) {
                        gxi += w.dG_dxi[i] * w.dG_dxi[i];
                        gx += w.dG_dx[i] * w.dG_dx[i];
                        pxi += w.dPhi_dxi[i] * w.dPhi_dxi[i];
                        px += w.dPhi_dx[i] * w.dPhi_dx[i];
                    }
                    const double den = std::pow(br, m) * gxi + std::pow(br, m - 2) * gx;
                    if (den > 0.0) {
                        const double ratio = w.HpG / den;
                        if (ratio < rep.min_escape_ratio) {
                            rep.min_escape_ratio = ratio;
                            rep.min_escape_point = detail::point_string(p);
                        }
                    }
                    const double pden = k1 * k1 * pxi + px;
                    if (w.Phi > 0.0 && pden > 0.0) rep.phi_ineq_c1 = std::min(rep.phi_ineq_c1, w.Phi / pden);
                    if (w.G > 0.0) rep.log_bound_const = std::max(rep.log_bound_const, w.G * wp.eps / std::log(br));
                    if (w.HpG < target.M1) {
                        constraints.emplace_back(std::log(target.M1 - w.HpG) + target.gamma * w.G, std::log(br));
                        constraint_points.push_back(p);
                    }
                }
    }
    if (!(rep.min_escape_ratio > 0.0))
        throw CertificationFailed("escape ratio not positive", rep.min_escape_point);

    // Smallest lattice K whose required M2 fits under the cap.
    const double k_max = target.k_max > 0 ? target.k_max : 2.0 * target.gamma * target.M1;
    const double log_cap = std::log(rep.m2_cap);
    bool found = false;
    std::size_t worst = 0;
    for (int step = 0; step * target.k_step <= k_max + 1e-12; ++step) {
        const double K = step * target.k_step;
        double need = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < constraints.size(); ++i) {
            const double v = constraints[i].first - K * constraints[i].second;
            if (v > need) {
                need = v;
                worst = i;
            }
        }
        if (need <= log_cap) {
            rep.k_exp = K;
            rep.m2 = std::exp(need);
            found = true;
            break;
        }
    }
    if (!found)
        throw CertificationFailed("no (M2, K) on the lattice satisfies the M1 inequality",
                                  detail::point_string(constraint_points[worst]));

    // Finite-difference S^1 seminorm proxies and the H_p G cross-check on a thinned grid.
    const auto idx = detail::multi_indices_upto2();
    rep.seminorm_table.clear();
    for (const auto& a : idx) rep.seminorm_table.push_back({{a[0], a[1]}, {a[2], a[3]}, 0.0});
    for (std::size_t i = 0; i < xi1s.size(); i += std::max(1, grid.seminorm_stride)) {
        const double k1 = xi1s[i];
        for (double x1 : lin_grid(-2 * d, 2 * d, 7))
            for (double x2 : lin_grid(-2 * d, 2 * d, 6))
                for (double c : lin_grid(-2 * d, 2 * d, 7)) {
                    const PhaseSpacePoint<2> p{{x1, x2}, {k1, c * k1}};
                    const double br = japanese(p.xi);
                    const std::array<double, 4> h{1e-3 * d, 1e-3 * d, 1e-4 * k1, 1e-4 * k1};
                    for (std::size_t e = 0; e < idx.size(); ++e) {
                        const double v = std::abs(detail::fd_derivative(p, wp, idx[e], h)) *
                                         std::pow(br, idx[e][2] + idx[e][3] - 1.0);
                        rep.seminorm_table[e].value = std::max(rep.seminorm_table[e].value, v);
                    }
                    const auto w = evaluate_weight(p, wp);
                    const std::array<double, 4> hs{1e-5 * d, 1e-5 * d, 1e-6 * k1, 1e-6 * k1};
                    const double gx1 = detail::fd_derivative(p, wp, {1, 0, 0, 0}, hs);
                    const double gk1 = detail::fd_derivative(p, wp, {0, 0, 1, 0}, hs);
                    const double fd = k1 * gk1 - x1 * gx1;
                    const double scale = std::abs(k1 * w.dG_dxi[0]) + std::abs(x1 * w.dG_dx[0]);
                    if (scale > 1e-8)
                        rep.fd_crosscheck_max_rel = std::max(rep.fd_crosscheck_max_rel, std::abs(fd - w.HpG) / scale);
                }
    }
    return rep;
}

} // namespace microlocal
