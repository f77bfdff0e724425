#pragma once

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "experiments.hpp"

#ifndef MICROLOCAL_VERSION
#define MICROLOCAL_VERSION "unknown"
#endif

namespace microlocal {

// Bad flags, unknown keys, unparsable values: exit status 2.
class UsageError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    std::string command;
    std::map<std::string, std::string> overrides;
    std::filesystem::path out_dir = "out";
    bool deterministic = false;
};

struct ParamSpec {
    std::string key;
    std::string fallback;
    std::string help;
};

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"figure1", "airy-moments", "weights-verify",
                                                "model1d", "wfa-scan",     "fbi-roundtrip"};
    return names;
}

inline std::vector<ParamSpec> command_params(const std::string& cmd) {
    if (cmd == "figure1")
        return {{"x1_min", "-2", "left end of the x1 range"},
                {"x1_max", "2", "right end of the x1 range"},
                {"n_x1", "41", "x1 samples"},
                {"n_theta", "24", "theta samples per x1 for the flow arrows"}};
    if (cmd == "airy-moments")
        return {{"k_max", "6", "highest derivative order (<= 8)"},
                {"tol", "1e-6", "relative tolerance for growth and ratios"},
                {"fd_max", "3", "orders cross-checked by finite differences"},
                {"fd_tol", "1e-5", "finite-difference tolerance"},
                {"residual_tol", "1e-4", "Tricomi residual tolerance relative to the local scale"}};
    if (cmd == "weights-verify")
        return {{"eps_exp_min", "3", "sweep eps = 2^-k from this k"},
                {"eps_exp_max", "10", "to this k"},
                {"delta", "0.1", "cone width"},
                {"M1", "10", "certification target M1"},
                {"gamma", "1", "certification target gamma"},
                {"grid_points", "200", "points of each log grid for the q inequalities"},
                {"tol", "1e-12", "pointwise inequality tolerance"},
                {"c2", "0.25", "constant in xi1 q' >= c2 q^2 / xi1"}};
    if (cmd == "model1d")
        return {{"n", "4096", "grid size for the uniform-bound table"},
                {"L", "20", "half width for the uniform-bound table"},
                {"energy_n", std::to_string(kEnergyGridN), "grid size for the energy identity"},
                {"energy_L", "512", "half width for the energy identity"},
                {"tol", "1e-6", "energy identity tolerance"},
                {"plateau", "0.05", "allowed relative spread of the uniform-bound table"}};
    if (cmd == "wfa-scan")
        return {{"functions", "gaussian,kink,airy", "test functions: gaussian, kink, step, airy"},
                {"x0", "", "base points (comma list); empty uses each function's defaults"},
                {"h", "0.5", "semiclassical parameter"},
                {"t_min", "4", "first ray sample"},
                {"t_max", "256", "last ray sample (<= 1000)"},
                {"t_count", "16", "ray samples, geometric"},
                {"b_min", "0.01", "smallest exponential rate counted as analytic"},
                {"fit_threshold", "0.98", "r^2 needed to accept a decay model"},
                {"threads", "0", "worker threads, 0 for all cores"}};
    if (cmd == "fbi-roundtrip")
        return {{"h", "0.1", "semiclassical parameter"},
                {"tol", "1e-5", "sup-norm roundtrip tolerance"},
                {"y_half", "2", "reconstruct on [-y_half, y_half]"},
                {"y_count", "81", "reconstruction points"},
                {"dump_grid", "1", "write the sampled transform of the Gaussian"}};
    throw UsageError("unknown command '" + cmd + "'");
}

// Flat key=value lines; '#' starts a comment. A file with no entries is an error.
inline std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text,
                                                                          const std::string& origin) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || trim(line.substr(0, eq)).empty())
            throw UsageError(origin + ":" + std::to_string(lineno) + ": expected key=value");
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    if (out.empty()) throw UsageError(origin + ": config file has no entries");
    return out;
}

inline std::vector<std::pair<std::string, std::string>> parse_config_file(const std::filesystem::path& p) {
    std::ifstream f(p);
    if (!f) throw UsageError("cannot read config file " + p.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str(), p.string());
}

// Defaults merged with overrides; typed access reports the offending key.
class Params {
public:
    Params(const std::string& cmd, const std::map<std::string, std::string>& overrides) {
        for (const auto& s : command_params(cmd)) values_[s.key] = s.fallback;
        for (const auto& [k, v] : overrides) {
            if (!values_.count(k)) {
                std::string known;
                for (const auto& s : command_params(cmd)) known += (known.empty() ? "" : ", ") + s.key;
                throw UsageError("unknown key '" + k + "' for " + cmd + " (known: " + known + ")");
            }
            values_[k] = v;
        }
    }

    const std::map<std::string, std::string>& all() const { return values_; }
    const std::string& str(const std::string& k) const { return values_.at(k); }

    double num(const std::string& k) const { return to_double(k, str(k)); }

    int integer(const std::string& k) const {
        const std::string& v = str(k);
        std::size_t pos = 0;
        long r = 0;
        try {
            r = std::stol(v, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (v.empty() || pos != v.size() || r < INT32_MIN || r > INT32_MAX)
            throw UsageError("key '" + k + "': expected an integer, got '" + v + "'");
        return static_cast<int>(r);
    }

    std::vector<std::string> list(const std::string& k) const {
        std::vector<std::string> out;
        std::stringstream ss(str(k));
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) out.push_back(item);
        return out;
    }

    std::vector<double> num_list(const std::string& k) const {
        std::vector<double> out;
        for (const auto& s : list(k)) out.push_back(to_double(k, s));
        return out;
    }

private:
    static double to_double(const std::string& k, const std::string& v) {
        std::size_t pos = 0;
        double r = 0.0;
        try {
            r = std::stod(v, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (v.empty() || pos != v.size() || !std::isfinite(r))
            throw UsageError("key '" + k + "': expected a number, got '" + v + "'");
        return r;
    }

    std::map<std::string, std::string> values_;
};

struct CommandResult {
    std::vector<std::string> outputs; // file names inside the output directory
    std::vector<Check> checks;
};

namespace detail {

class OutDir {
public:
    explicit OutDir(std::filesystem::path dir) : dir_(std::move(dir)) {}

    std::ofstream open(const std::string& name, CommandResult& r) const {
        std::ofstream f(dir_ / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (dir_ / name).string());
        r.outputs.push_back(name);
        return f;
    }

private:
    std::filesystem::path dir_;
};

inline std::string c17(cplx z) { return fmt17(z.real()) + "," + fmt17(z.imag()); }

inline CommandResult run_figure1(const Params& p, const OutDir& out) {
    CommandResult r;
    const auto f = figure1(p.num("x1_min"), p.num("x1_max"), p.integer("n_x1"), p.integer("n_theta"));
    for (const auto& [name, rows] : {std::pair{"figure1_characteristic.csv", &f.characteristic},
                                     std::pair{"figure1_arrows.csv", &f.arrows}}) {
        auto os = out.open(name, r);
        os << "operator,x1,theta,dtheta_dt,dx1_dt\n";
        for (const auto& row : *rows)
            os << row.op << ',' << fmt17(row.x1) << ',' << fmt17(row.theta) << ',' << fmt17(row.dtheta_dt) << ','
               << fmt17(row.dx1_dt) << '\n';
    }
    r.checks = f.checks;
    return r;
}

inline CommandResult run_airy_moments(const Params& p, const OutDir& out) {
    CommandResult r;
    const auto m = airy_moments(p.integer("k_max"), p.num("tol"), p.integer("fd_max"), p.num("fd_tol"));
    {
        auto os = out.open("airy_moments.csv", r);
        os << "k,growth,expected,rel_err,ratio,expected_ratio,fd_re,fd_im\n";
        for (const auto& row : m.rows)
            os << row.k << ',' << fmt17(row.growth) << ',' << fmt17(row.expected) << ',' << fmt17(row.rel_err) << ','
               << fmt17(row.ratio) << ',' << fmt17(row.ratio_expected) << ',' << c17(row.fd) << '\n';
    }
    const auto t = tricomi_annihilation(default_tricomi_points(), p.num("residual_tol"));
    {
        auto os = out.open("tricomi_residual.csv", r);
        os << "x1,x2,residual,scale\n";
        for (const auto& row : t.rows)
            os << fmt17(row.x1) << ',' << fmt17(row.x2) << ',' << fmt17(row.residual) << ',' << fmt17(row.scale)
               << '\n';
    }
    r.checks = m.checks;
    r.checks.insert(r.checks.end(), t.checks.begin(), t.checks.end());
    return r;
}

inline CommandResult run_weights_verify(const Params& p, const OutDir& out) {
    CommandResult r;
    const auto w = weights_verify(dyadic_sweep(p.integer("eps_exp_min"), p.integer("eps_exp_max")), p.num("delta"),
                                  p.num("M1"), p.num("gamma"), p.integer("grid_points"), p.num("tol"), p.num("c2"));
    auto os = out.open("weights_verify.csv", r);
    os << "eps,q_sandwich_violation,q_lower_line_violation,xi1_q_violation,min_HpG,min_escape_ratio,"
          "phi_ineq_c1,K,M2,M2_cap,fd_crosscheck_max_rel\n";
    for (const auto& row : w.rows)
        os << fmt17(row.eps) << ',' << fmt17(row.q.max_sandwich_violation) << ','
           << fmt17(row.q.max_lower_line_violation) << ',' << fmt17(row.q.max_xi1q_violation) << ','
           << fmt17(row.rep.min_HpG) << ',' << fmt17(row.rep.min_escape_ratio) << ',' << fmt17(row.rep.phi_ineq_c1)
           << ',' << fmt17(row.rep.k_exp) << ',' << fmt17(row.rep.m2) << ',' << fmt17(row.rep.m2_cap) << ','
           << fmt17(row.rep.fd_crosscheck_max_rel) << '\n';
    r.checks = w.checks;
    return r;
}

inline CommandResult run_model1d(const Params& p, const OutDir& out) {
    CommandResult r;
    const int n = p.integer("n"), en = p.integer("energy_n");
    if (n <= 0 || en <= 0) throw UsageError("grid sizes must be positive");
    const auto m = model1d_experiment(model_config_matrix(), static_cast<std::size_t>(n), p.num("L"),
                                      static_cast<std::size_t>(en), p.num("energy_L"), p.num("tol"),
                                      p.num("plateau"));
    {
        auto os = out.open("model1d_energy.csv", r);
        os << "a_re,a_im,tau,eps,lhs,rhs,scale,mismatch\n";
        for (const auto& row : m.energy)
            os << c17(row.a) << ',' << fmt17(row.tau) << ',' << fmt17(row.eps) << ',' << fmt17(row.e.lhs) << ','
               << fmt17(row.e.rhs) << ',' << fmt17(row.e.scale) << ',' << fmt17(row.e.mismatch()) << '\n';
    }
    {
        auto os = out.open("model1d_uniform_bound.csv", r);
        os << "a_re,a_im,tau,eps,norm_v_hat,norm_v_hat_mirror,norm_f_eps,C0,C1,bound\n";
        for (const auto& t : m.tables)
            for (const auto& row : t.table.rows)
                os << c17(t.a) << ',' << fmt17(t.tau) << ',' << fmt17(row.eps) << ',' << fmt17(row.norm_v_hat) << ','
                   << fmt17(row.norm_v_hat_mirror) << ',' << fmt17(row.norm_f_eps) << ',' << fmt17(t.table.C0)
                   << ',' << fmt17(t.table.C1) << ',' << fmt17(row.bound) << '\n';
    }
    r.checks = m.checks;
    return r;
}

inline CommandResult run_wfa_scan(const Params& p, const OutDir& out, bool deterministic) {
    CommandResult r;
    WfaParams wp;
    wp.fbi.h = p.num("h");
    const int tc = p.integer("t_count");
    if (tc < 2) throw UsageError("t_count must be >= 2");
    wp.t_grid = geometric_grid(p.num("t_min"), p.num("t_max"), tc);
    wp.b_min = p.num("b_min");
    wp.fit_threshold = p.num("fit_threshold");
    const int th = p.integer("threads");
    if (th < 0) throw UsageError("threads must be >= 0");
    wp.threads = deterministic ? 1u : static_cast<unsigned>(th);
    const auto custom = p.num_list("x0");

    nlohmann::json doc = nlohmann::json::array();
    for (const auto& name : p.list("functions")) {
        const auto u = wfa_test_function(name);
        std::vector<Vec<1>> xs;
        for (double x : custom.empty() ? default_wfa_points(name) : custom) xs.push_back({x});
        const auto vs = wfa_scan<1>(u, xs, {{1.0}, {-1.0}}, wp);
        doc.push_back({{"function", name}, {"rays", wfa_report(vs)}});
        r.checks.push_back(wfa_expectation(name, vs));
    }
    if (doc.empty()) throw UsageError("functions: empty list");
    auto os = out.open("wfa_scan.json", r);
    os << doc.dump(2) << '\n';
    return r;
}

inline CommandResult run_fbi_roundtrip(const Params& p, const OutDir& out) {
    CommandResult r;
    const int yc = p.integer("y_count");
    if (yc < 2) throw UsageError("y_count must be >= 2");
    const double h = p.num("h");
    const auto rt = fbi_roundtrip(h, p.num("tol"), p.num("y_half"), yc);
    {
        auto os = out.open("fbi_roundtrip.csv", r);
        os << "function,y,re,im,exact,abs_err\n";
        for (const auto& row : rt.rows)
            os << row.function << ',' << fmt17(row.y) << ',' << c17(row.value) << ',' << fmt17(row.exact) << ','
               << fmt17(std::abs(row.value - row.exact)) << '\n';
    }
    if (p.integer("dump_grid") != 0) {
        auto os = out.open("fbi_grid_gaussian.csv", r);
        write_grid_csv(os, rt.first_grid, h, 0.0);
    }
    r.checks = rt.checks;
    return r;
}

inline std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

} // namespace detail

// Runs one command, writes its artifacts and manifest.json into cfg.out_dir and prints
// one summary line per check. Returns the exit status: 0 pass, 1 check failure.
// Throws UsageError for configuration problems.
inline int run_command(const RunConfig& cfg, std::ostream& log) {
    const Params params(cfg.command, cfg.overrides);
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw UsageError("cannot create output directory " + cfg.out_dir.string() + ": " + ec.message());
    const detail::OutDir out(cfg.out_dir);

    const auto start = std::chrono::steady_clock::now();
    CommandResult r;
    std::string failure;
    try {
        if (cfg.command == "figure1") r = detail::run_figure1(params, out);
        else if (cfg.command == "airy-moments") r = detail::run_airy_moments(params, out);
        else if (cfg.command == "weights-verify") r = detail::run_weights_verify(params, out);
        else if (cfg.command == "model1d") r = detail::run_model1d(params, out);
        else if (cfg.command == "wfa-scan") r = detail::run_wfa_scan(params, out, cfg.deterministic);
        else r = detail::run_fbi_roundtrip(params, out);
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const std::exception& e) {
        r.checks.push_back({"run", false, e.what()});
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    nlohmann::json m;
    m["command"] = cfg.command;
    m["version"] = MICROLOCAL_VERSION;
    m["deterministic"] = cfg.deterministic;
    m["parameters"] = params.all();
    m["outputs"] = r.outputs;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    m["checks"] = checks;
    m["pass"] = all_pass(r.checks);
    if (!cfg.deterministic) {
        m["started_utc"] = detail::utc_timestamp();
        m["seconds"] = seconds;
    }
    {
        std::ofstream f(cfg.out_dir / "manifest.json", std::ios::binary);
        if (!f) throw std::runtime_error("cannot write manifest.json");
        f << m.dump(2) << '\n';
    }

    for (const auto& c : r.checks) log << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    int passed = 0;
    for (const auto& c : r.checks) passed += c.pass;
    if (const Check* f = first_failure(r.checks)) {
        log << cfg.command << ": FAIL, first failing check " << f->name << " (" << passed << "/" << r.checks.size()
            << " passed)\n";
        return 1;
    }
    log << cfg.command << ": PASS (" << passed << "/" << r.checks.size() << " checks)\n";
    return 0;
}

} // namespace microlocal
