#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "../fbi.hpp"
#include "../model1d.hpp"
#include "../numerics.hpp"
#include "../phase_space.hpp"
#include "../weights.hpp"
#include "../wfa.hpp"

// Experiment drivers shared by the command-line tool and the acceptance binary.
// Each returns its data rows plus named pass/fail checks with the measured value.

namespace microlocal {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

inline std::string fmt_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

inline Check check_le(const std::string& name, double value, double limit) {
    return {name, value <= limit, fmt_sci(value) + " <= " + fmt_sci(limit)};
}

inline Check check_ge(const std::string& name, double value, double limit) {
    return {name, value >= limit, fmt_sci(value) + " >= " + fmt_sci(limit)};
}

inline bool all_pass(const std::vector<Check>& c) {
    return std::all_of(c.begin(), c.end(), [](const Check& x) { return x.pass; });
}

inline const Check* first_failure(const std::vector<Check>& c) {
    for (const auto& x : c)
        if (!x.pass) return &x;
    return nullptr;
}

// ---- Airy derivative growth and Tricomi annihilation ----

struct AiryMomentRow {
    int k;
    double growth;       // D_{x2}^k u(0, 0)
    double expected;     // Ai(0) (2k)!
    double rel_err;
    double ratio;        // growth(k) / growth(k - 1), NaN for k = 0
    double ratio_expected;
    cplx fd;             // finite-difference value for k <= 3, NaN otherwise
};

struct AiryMoments {
    std::vector<AiryMomentRow> rows;
    std::vector<Check> checks;
};

inline AiryMoments airy_moments(int k_max = 6, double tol = 1e-6, int fd_max = 3, double fd_tol = 1e-5) {
    if (k_max < 0 || k_max > kMaxDerivativeOrder) throw std::invalid_argument("airy_moments: k_max must lie in [0, 8]");
    AiryMoments out;
    const double ai0 = airy_ai(0.0);
    double fact = 1.0; // (2k)!
    double worst = 0.0, worst_ratio = 0.0, worst_fd = 0.0;
    int within = 0;
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) fact *= (2.0 * k - 1.0) * (2.0 * k);
        AiryMomentRow r;
        r.k = k;
        r.growth = derivative_growth(k);
        r.expected = ai0 * fact;
        r.rel_err = std::abs(r.growth / r.expected - 1.0);
        r.ratio = k > 0 ? r.growth / out.rows.back().growth : std::nan("");
        r.ratio_expected = k > 0 ? (2.0 * k - 1.0) * (2.0 * k) : std::nan("");
        r.fd = k <= fd_max ? derivative_fd(k) : cplx(std::nan(""), std::nan(""));
        worst = std::max(worst, r.rel_err);
        if (r.rel_err <= tol) ++within;
        if (k > 0) worst_ratio = std::max(worst_ratio, std::abs(r.ratio / r.ratio_expected - 1.0));
        if (k <= fd_max) worst_fd = std::max(worst_fd, std::abs(r.fd - r.growth) / r.growth);
        out.rows.push_back(r);
    }
    const int n = k_max + 1;
    out.checks.push_back({"growth_matches_(2k)!", within == n,
                          std::to_string(within) + "/" + std::to_string(n) + " within " + fmt_sci(tol) +
                              ", worst " + fmt_sci(worst)});
    if (k_max > 0) out.checks.push_back(check_le("ratio_test_(2k+2)(2k+1)", worst_ratio, tol));
    out.checks.push_back(check_le("finite_difference_crosscheck", worst_fd, fd_tol));
    return out;
}

struct TricomiRow {
    double x1, x2, residual, scale;
};

struct TricomiCheck {
    std::vector<TricomiRow> rows;
    std::vector<Check> checks;
};

inline std::vector<std::pair<double, double>> default_tricomi_points() {
    return {{0.5, 0.0}, {-0.5, 0.2}, {1.0, -0.3}, {-1.0, 0.1}, {0.25, 0.5}};
}

inline TricomiCheck tricomi_annihilation(const std::vector<std::pair<double, double>>& pts = default_tricomi_points(),
                                         double tol = 1e-4) {
    TricomiCheck out;
    double worst = 0.0;
    for (auto [x1, x2] : pts) {
        const auto r = tricomi_residual(x1, x2);
        out.rows.push_back({x1, x2, std::abs(r.residual), r.scale});
        worst = std::max(worst, std::abs(r.residual) / r.scale);
    }
    out.checks.push_back(check_le("tricomi_residual_over_scale", worst, tol));
    return out;
}

// ---- FBI left inverse ----

struct RoundtripFunction {
    std::string name;
    std::function<double(double)> factor; // u = factor(y) e^{-y^2/2}
};

inline std::vector<RoundtripFunction> roundtrip_functions() {
    return {{"gaussian", [](double) { return 1.0; }},
            {"y_gaussian", [](double y) { return y; }},
            {"y2_gaussian", [](double y) { return y * y; }},
            {"cos3y_gaussian", [](double y) { return std::cos(3 * y); }},
            {"siny_gaussian", [](double y) { return std::sin(y); }}};
}

struct RoundtripRow {
    std::string function;
    double y;
    cplx value;
    double exact;
};

struct Roundtrip {
    std::vector<RoundtripRow> rows;
    std::vector<double> sup_err; // per function
    PhaseGrid first_grid;        // transform samples of the first function
    std::vector<Check> checks;
};

inline Roundtrip fbi_roundtrip(double h = 0.1, double tol = 1e-5, double y_half = 2.0, int y_count = 81) {
    Roundtrip out;
    FbiParams p;
    p.h = h;
    double worst = 0.0;
    for (const auto& f : roundtrip_functions()) {
        const auto g = f.factor;
        const SampledFunction<1> u{[g](const Vec<1>& y) { return cplx(g(y[0]) * std::exp(-0.5 * y[0] * y[0])); },
                                   Analyticity::Analytic, {}};
        const PhaseGrid v = sample_transform(u, default_phase_grid(), p);
        if (out.rows.empty()) out.first_grid = v;
        double err = 0.0;
        for (int j = 0; j < y_count; ++j) {
            const double y = -y_half + 2.0 * y_half * j / (y_count - 1);
            const cplx r = fbi_inverse(v, y, p);
            const double ex = u({y}).real();
            err = std::max(err, std::abs(r - ex));
            out.rows.push_back({f.name, y, r, ex});
        }
        out.sup_err.push_back(err);
        worst = std::max(worst, err);
        out.checks.push_back(check_le("roundtrip_" + f.name, err, tol));
    }
    return out;
}

// ---- Escape weight certification ----

inline std::vector<double> dyadic_sweep(int from_exp, int to_exp) {
    std::vector<double> e;
    for (int k = from_exp; k <= to_exp; ++k) e.push_back(std::ldexp(1.0, -k));
    return e;
}

struct WeightsRow {
    double eps;
    QInequalityCheck q;
    WeightReport rep;
};

struct WeightsVerify {
    std::vector<WeightsRow> rows;
    std::vector<Check> checks;
};

inline WeightsVerify weights_verify(const std::vector<double>& eps_sweep = dyadic_sweep(3, 10), double delta = 0.1,
                                    double M1 = 10.0, double gamma = 1.0, int grid_points = 200,
                                    double ineq_tol = 1e-12, double c2 = 0.25) {
    WeightsVerify out;
    double worst_q = 0.0, worst_line = 0.0, worst_c2 = 0.0, min_hpg = INFINITY, lo = INFINITY, hi = 0.0,
           worst_k = 0.0;
    for (double eps : eps_sweep) {
        WeightsRow r;
        r.eps = eps;
        r.q = check_q_inequalities(eps, log_grid(1e-2, 1e8, grid_points), c2);
        CertificationTarget t;
        t.M1 = M1;
        t.gamma = gamma;
        try {
            r.rep = verify_escape(1, WeightParams{eps, delta}, EscapeGrid{}, t);
        } catch (const CertificationFailed& e) {
            out.checks.push_back({"certification_eps_" + fmt_sci(eps), false, std::string(e.what()) + " at " + e.point()});
            continue;
        }
        worst_q = std::max(worst_q, r.q.max_sandwich_violation);
        worst_line = std::max(worst_line, r.q.max_lower_line_violation);
        worst_c2 = std::max(worst_c2, r.q.max_xi1q_violation);
        min_hpg = std::min(min_hpg, r.rep.min_HpG);
        lo = std::min(lo, r.rep.min_escape_ratio);
        hi = std::max(hi, r.rep.min_escape_ratio);
        worst_k = std::max(worst_k, r.rep.k_exp);
        out.rows.push_back(r);
    }
    out.checks.push_back(check_le("q_sandwich", worst_q, ineq_tol));
    out.checks.push_back(check_le("q_lower_line", worst_line, ineq_tol));
    out.checks.push_back(check_le("xi1_q_prime_c2", worst_c2, ineq_tol));
    out.checks.push_back(check_ge("min_HpG", min_hpg, 0.0));
    out.checks.push_back({"min_escape_ratio_positive", lo > 0.0, fmt_sci(lo) + " > 0"});
    out.checks.push_back(check_le("escape_ratio_variation", lo > 0.0 ? hi / lo : INFINITY, 2.0));
    out.checks.push_back(check_le("certified_K", worst_k, 1.5 * gamma * M1));
    return out;
}

// ---- Effective weight comparison ----

struct EffectiveWeight {
    double r_theta = 0.0, r_half = 0.0, ratio = 0.0;
    std::vector<Check> checks;
};

inline std::vector<PhaseSpacePoint<1>> effective_weight_points() {
    return {{{0.0}, {1.0}}, {{0.1}, {2.0}}, {{-0.05}, {4.0}}, {{0.0}, {8.0}}, {{0.3}, {3.0}}};
}

// r(theta) = max over the points of |psi_theta - theta G|.
inline EffectiveWeight effective_weight_comparison(double theta = 0.1, double lo = 0.15, double hi = 0.45) {
    const auto G = weight_deformation<1>(WeightParams{0.125, 0.25});
    const auto pts = effective_weight_points();
    auto r = [&](double th) {
        double m = 0.0;
        for (const auto& a : pts) m = std::max(m, std::abs(effective_psi<1>(a, G, th).value - th * G(a).G));
        return m;
    };
    EffectiveWeight out;
    out.r_theta = r(theta);
    out.r_half = r(0.5 * theta);
    out.ratio = out.r_half / out.r_theta;
    out.checks.push_back({"ratio_r(theta/2)/r(theta)", out.ratio >= lo && out.ratio <= hi,
                          fmt_sci(out.ratio) + " in [" + fmt_sci(lo) + ", " + fmt_sci(hi) + "]"});
    return out;
}

// ---- Model energy identity and uniform bound ----

inline std::vector<ModelParams> model_config_matrix() {
    std::vector<ModelParams> out;
    for (cplx a : {cplx(0.0), cplx(1.0, 1.0), cplx(0.0, -2.0)})
        for (double tau : {1.0, 2.0}) {
            ModelParams p;
            p.a = a;
            p.tau = tau;
            out.push_back(p);
        }
    return out;
}

struct EnergyMatrixRow {
    cplx a;
    double tau;
    double eps;
    EnergyIdentity e;
};

struct BoundTableRow {
    cplx a;
    double tau;
    UniformBoundTable table;
};

struct Model1dRun {
    std::vector<EnergyMatrixRow> energy;
    std::vector<BoundTableRow> tables;
    std::vector<Check> checks;
};

inline Model1dRun model1d_experiment(const std::vector<ModelParams>& configs = model_config_matrix(),
                                     std::size_t n = 4096, double L = 20.0, std::size_t energy_n = kEnergyGridN,
                                     double energy_L = kEnergyGridL, double tol = 1e-6, double plateau = 0.05) {
    Model1dRun out;
    const FourierGrid v = energy_test_profile(energy_n, energy_L);
    double worst = 0.0, worst_plateau = 0.0, worst_margin = -INFINITY, worst_solve = 0.0;
    for (const auto& p : configs) {
        for (const auto& r : energy_identity_sweep(p, v)) {
            out.energy.push_back({p.a, p.tau, r.eps, r.e});
            worst = std::max(worst, r.e.mismatch());
        }
        auto t = uniform_bound_experiment(p, manufactured_gaussian_forcing(p.a, p.tau), n, L);
        double lo = INFINITY, hi = 0.0;
        for (const auto& r : t.rows) {
            lo = std::min(lo, r.norm_v_hat);
            hi = std::max(hi, r.norm_v_hat);
            worst_margin = std::max(worst_margin, std::max(r.norm_v_hat, r.norm_v_hat_mirror) / r.bound);
        }
        worst_plateau = std::max(worst_plateau, hi / lo - 1.0);
        worst_solve = std::max(worst_solve, t.solve_error);
        out.tables.push_back({p.a, p.tau, std::move(t)});
    }
    out.checks.push_back(check_le("energy_identity_mismatch", worst, tol));
    out.checks.push_back(check_le("uniform_bound_plateau", worst_plateau, plateau));
    out.checks.push_back(check_le("norm_over_C0_plus_C1", worst_margin, 1.0));
    out.checks.push_back(check_le("manufactured_solve_error", worst_solve, 1e-6));
    return out;
}

// ---- Analytic wave front detection ----

inline SampledFunction<1> wfa_test_function(const std::string& name) {
    if (name == "gaussian")
        return {[](const Vec<1>& y) { return cplx(std::exp(-0.5 * y[0] * y[0])); }, Analyticity::Analytic, {}};
    if (name == "kink")
        return {[](const Vec<1>& y) { return cplx(std::abs(y[0]) * std::exp(-y[0] * y[0])); },
                Analyticity::SingularAt, {0.0}};
    if (name == "step")
        return {[](const Vec<1>& y) { return cplx(y[0] > 0.0 ? std::exp(-0.5 * y[0] * y[0]) : 0.0); },
                Analyticity::SingularAt, {0.0}};
    if (name == "airy")
        return {[](const Vec<1>& y) { return airy_solution(y[0], 0.0) * std::exp(-0.5 * y[0] * y[0]); },
                Analyticity::SingularAt, {0.0}};
    throw std::invalid_argument("unknown test function '" + name + "' (gaussian, kink, step, airy)");
}

inline std::vector<double> default_wfa_points(const std::string& name) {
    if (name == "gaussian") return {-1.5, -0.6, 0.0, 0.8, 1.7};
    if (name == "airy") return {0.0};
    return {-1.0, -0.5, 0.0, 0.5, 1.0};
}

// Expected verdict pattern for the bundled functions; the singular point is 0.
inline Check wfa_expectation(const std::string& name, const std::vector<WfaVerdict>& vs) {
    int bad = 0;
    std::string first;
    for (const auto& v : vs) {
        const bool at0 = v.x0[0] == 0.0;
        bool ok = true;
        if (name == "gaussian") ok = v.status == WfaStatus::NotInWFa;
        if (name == "kink") ok = at0 ? v.status == WfaStatus::InWFa : v.status == WfaStatus::NotInWFa;
        if (name == "step") ok = !at0 || v.status == WfaStatus::InWFa;
        if (name == "airy") ok = v.status != WfaStatus::NotInWFa;
        if (!ok && bad++ == 0) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "x0=%g omega=%g gave %s", v.x0[0], v.omega[0], to_string(v.status));
            first = buf;
        }
    }
    std::string what = name == "gaussian" ? "all NotInWFa"
                       : name == "kink"   ? "InWFa exactly at 0"
                       : name == "step"   ? "InWFa at 0"
                                          : "never NotInWFa at 0";
    return {"wfa_" + name, bad == 0,
            std::to_string(vs.size() - bad) + "/" + std::to_string(vs.size()) + " rays, " + what +
                (bad ? "; first mismatch " + first : "")};
}

struct WfaRun {
    std::string function;
    std::vector<WfaVerdict> verdicts;
};

struct WfaDichotomy {
    std::vector<WfaRun> runs;
    std::vector<Check> checks;
};

inline WfaDichotomy wfa_dichotomy(const std::vector<std::string>& functions = {"gaussian", "kink", "airy"},
                                  const WfaParams& p = {}) {
    WfaDichotomy out;
    for (const auto& name : functions) {
        const auto u = wfa_test_function(name);
        std::vector<Vec<1>> xs;
        for (double x : default_wfa_points(name)) xs.push_back({x});
        const auto vs = wfa_scan<1>(u, xs, {{1.0}, {-1.0}}, p);
        out.checks.push_back(wfa_expectation(name, vs));
        out.runs.push_back({name, vs});
    }
    return out;
}

// ---- Characteristic geometry, flows and radiality ----

struct Figure1Row {
    std::string op;
    double x1, theta, dtheta_dt, dx1_dt;
};

struct Figure1 {
    std::vector<Figure1Row> characteristic; // points of the characteristic sets
    std::vector<Figure1Row> arrows;         // flow field on a (x1, theta) lattice
    std::vector<Check> checks;
};

inline Figure1 figure1(double x1_min = -2.0, double x1_max = 2.0, int n_x1 = 41, int n_theta = 24) {
    if (n_x1 < 2 || n_theta < 1) throw std::invalid_argument("figure1: need n_x1 >= 2 and n_theta >= 1");
    Figure1 out;
    const SymbolSpec kel{SymbolKind::Keldysh, 1, {}}, tri{SymbolKind::Tricomi, 1, {}};
    bool tricomi_empty = true, boundary_ok = false, lambda_still = true;
    double worst_dx1 = 0.0;
    for (int i = 0; i < n_x1; ++i) {
        const double x1 = x1_min + (x1_max - x1_min) * i / (n_x1 - 1);
        for (const auto& [name, s] : {std::pair{"keldysh", kel}, std::pair{"tricomi", tri}}) {
            const auto angles = characteristic_angles(s.kind, x1);
            if (s.kind == SymbolKind::Tricomi && x1 > 0.0 && !angles.empty()) tricomi_empty = false;
            for (double th : angles) {
                const auto v = cylinder_field(s, x1, th);
                out.characteristic.push_back({name, x1, th, v.dtheta_dt, v.dx1_dt});
            }
            for (int j = 0; j < n_theta; ++j) {
                const double th = kTwoPi * j / n_theta;
                const auto v = cylinder_field(s, x1, th);
                out.arrows.push_back({name, x1, th, v.dtheta_dt, v.dx1_dt});
            }
        }
    }
    // The Keldysh characteristic set meets x1 = 0 at theta = 0 and pi (the two radial components).
    const auto at0 = characteristic_angles(SymbolKind::Keldysh, 0.0);
    boundary_ok = at0.size() == 2 && std::abs(at0[0]) < 1e-14 && std::abs(at0[1] - M_PI) < 1e-14;
    for (double th : {0.0, M_PI}) {
        const auto v = cylinder_field(kel, 0.0, th);
        worst_dx1 = std::max(worst_dx1, std::abs(v.dx1_dt));
        lambda_still = lambda_still && v.dx1_dt == 0.0;
    }
    out.checks.push_back({"keldysh_boundary_angles_0_pi", boundary_ok, std::to_string(at0.size()) + " angles at x1 = 0"});
    out.checks.push_back({"tricomi_empty_for_x1_positive", tricomi_empty, "no characteristic angle for x1 > 0"});
    out.checks.push_back({"keldysh_lambda_dx1_dt_zero", lambda_still, "max |dx1/dt| = " + fmt_sci(worst_dx1)});
    return out;
}

struct FlowChecks {
    std::vector<Check> checks;
};

inline FlowChecks flow_radiality(double inv_tol = 1e-10, double sol_tol = 1e-8, double cons_tol = 1e-8) {
    FlowChecks out;
    const SymbolSpec kel{SymbolKind::Keldysh, 1, {}}, tri{SymbolKind::Tricomi, 1, {}};

    // Lambda_+ and Lambda_- stay invariant; on Lambda_+ xi1(t) = xi1(0) / (1 + xi1(0) t).
    double worst_inv = 0.0, worst_sol = 0.0;
    const auto plus = flow(kel, PhaseSpacePoint<2>{{0.0, 0.0}, {1.0, 0.0}}, 1.0, 1024);
    for (std::size_t i = 0; i < plus.size(); ++i) {
        const double t = i / 1024.0;
        worst_inv = std::max({worst_inv, std::abs(plus[i].x[0]), std::abs(plus[i].xi[1])});
        worst_sol = std::max(worst_sol, std::abs(plus[i].xi[0] * (1.0 + t) - 1.0));
    }
    const auto minus = flow(kel, PhaseSpacePoint<2>{{0.0, 0.4}, {-2.0, 0.0}}, 0.4, 1024);
    for (const auto& p : minus) worst_inv = std::max({worst_inv, std::abs(p.x[0]), std::abs(p.xi[1])});
    out.checks.push_back(check_le("keldysh_lambda_invariance", worst_inv, inv_tol));
    out.checks.push_back(check_le("xi1_equals_1/(1+t)", worst_sol, sol_tol));

    // Both components are radial for -p.
    std::vector<double> ks;
    for (double k = 0.25; k <= 64.0; k *= 2.0) ks.push_back(k);
    const auto rp = check_radial(kel, keldysh_lagrangian(LagrangianSign::Plus, ks, {-0.5, 0.0, 0.5}));
    const auto rm = check_radial(kel, keldysh_lagrangian(LagrangianSign::Minus, ks, {-0.5, 0.0, 0.5}));
    out.checks.push_back({"keldysh_lambda_radial", rp.radial() && rm.radial(),
                          "non-parallelism " + fmt_sci(std::max(rp.max_non_parallelism, rm.max_non_parallelism))});

    // The null bicharacteristic from (-1, 0; 1, 1) has x1 = -(1 - t)^2 and reaches {x1 = 0} at t = 1.
    const double T = 2.0;
    const int steps = 2048;
    const auto tr = flow(tri, PhaseSpacePoint<2>{{-1.0, 0.0}, {1.0, 1.0}}, T, steps);
    const auto c = boundary_contact(tr, T / steps);
    out.checks.push_back({"tricomi_reaches_x1_0", c.reached(1e-10) && c.xi1_changes_sign,
                          "min |x1| = " + fmt_sci(c.min_abs_x1) + " at t = " + fmt_sci(c.time_at_min)});

    // p is conserved along the flow.
    const std::vector<std::pair<SymbolSpec, PhaseSpacePoint<2>>> starts = {
        {kel, {{0.3, -0.2}, {1.0, 0.5}}},  {kel, {{-0.4, 0.1}, {1.2, -0.3}}}, {kel, {{0.7, 0.4}, {0.8, 0.9}}},
        {tri, {{0.3, -0.2}, {1.0, 0.5}}},  {tri, {{-0.4, 0.1}, {1.2, -0.3}}}, {tri, {{0.7, 0.4}, {0.8, 0.9}}}};
    double worst_cons = 0.0;
    for (const auto& [s, p0] : starts) {
        const double T2 = s.kind == SymbolKind::Keldysh ? 2.0 : 10.0;
        const auto path = flow(s, p0, T2, 4096);
        const double v0 = eval_symbol(s, p0);
        double scale = 0.0;
        for (const auto& q : path) scale = std::max(scale, q.xi[0] * q.xi[0] + q.xi[1] * q.xi[1]);
        for (const auto& q : path)
            worst_cons = std::max(worst_cons, std::abs(eval_symbol(s, q) - v0) / std::max(std::abs(v0), scale));
    }
    out.checks.push_back(check_le("symbol_conservation", worst_cons, cons_tol));
    return out;
}

} // namespace microlocal
