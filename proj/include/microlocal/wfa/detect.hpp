#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "../fbi/transform.hpp"
#include "../numerics/decay_fit.hpp"

namespace microlocal {

enum class WfaStatus { NotInWFa, InWFa, Inconclusive };

inline const char* to_string(WfaStatus s) {
    switch (s) {
    case WfaStatus::NotInWFa: return "NotInWFa";
    case WfaStatus::InWFa: return "InWFa";
    case WfaStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

inline std::vector<double> geometric_grid(double lo, double hi, int count) {
    if (!(lo > 0.0 && hi > lo && count >= 2)) throw std::invalid_argument("geometric_grid: need 0 < lo < hi, count >= 2");
    std::vector<double> t(count);
    for (int i = 0; i < count; ++i) t[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
    return t;
}

inline constexpr double kMaxRayT = 1e3;

struct WfaParams {
    FbiParams fbi{0.5, {1e-11, 0.0, 50, 1e-16}};
    std::vector<double> t_grid = geometric_grid(4.0, 256.0, 16);
    double b_min = 0.01;
    double fit_threshold = kDefaultFitThreshold;
    // A sample is resolved when |Tu| exceeds this fraction of the integrand's L1 norm.
    double resolve_floor = 1e-13;
    // Exponential decay has a local rate that levels off; a rate falling like t^kappa with
    // kappa below this is sub-exponential (Gevrey, not analytic) decay.
    double kappa_min = -0.3;
    unsigned threads = 0; // 0: hardware concurrency

    void validate() const {
        fbi.validate();
        if (t_grid.size() < static_cast<std::size_t>(kMinDecaySamples))
            throw InsufficientSamples("WfaParams: t_grid needs at least 8 points");
        for (std::size_t i = 0; i < t_grid.size(); ++i) {
            if (!(t_grid[i] > 0.0) || (i > 0 && !(t_grid[i] > t_grid[i - 1])))
                throw std::invalid_argument("WfaParams: t_grid must be positive and increasing");
        }
        if (!(t_grid.back() <= kMaxRayT)) throw std::invalid_argument("WfaParams: max t must be <= 1e3");
        if (!(b_min > 0.0)) throw std::invalid_argument("WfaParams: b_min must be positive");
        if (!(fit_threshold > 0.0 && fit_threshold < 1.0))
            throw std::invalid_argument("WfaParams: fit_threshold must lie in (0, 1)");
        if (!(resolve_floor > 0.0)) throw std::invalid_argument("WfaParams: resolve_floor must be positive");
    }
};

struct RaySample {
    double t = 0.0;
    double magnitude = 0.0;
    double l1 = 0.0;
    bool resolved = false;
};

// |Tu(x0, t omega)| along the ray, with the L1 norm of each integrand for the resolution test.
template <std::size_t N>
std::vector<RaySample> ray_scan(const SampledFunction<N>& u, const Vec<N>& x0, const Vec<N>& omega,
                                const FbiParams& p, const std::vector<double>& t_grid,
                                double resolve_floor = 1e-13) {
    if (std::abs(norm<N>(omega) - 1.0) > 1e-12) throw std::invalid_argument("ray_scan: omega must be a unit vector");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > 0.0) || (i > 0 && !(t_grid[i] > t_grid[i - 1])))
            throw std::invalid_argument("ray_scan: t grid must be positive and increasing");
    }
    if (!t_grid.empty() && !(t_grid.back() <= kMaxRayT)) throw std::invalid_argument("ray_scan: max t must be <= 1e3");
    std::vector<RaySample> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
        PhaseSpacePoint<N> rho{x0, {}};
        for (std::size_t j = 0; j < N; ++j) rho.xi[j] = t * omega[j];
        const FbiSample s = fbi_sample(u, complexify(rho), p);
        const double m = std::abs(s.value);
        out.push_back({t, m, s.l1, m > resolve_floor * s.l1});
    }
    return out;
}

struct WfaVerdict {
    std::vector<double> x0;
    std::vector<double> omega;
    WfaStatus status = WfaStatus::Inconclusive;
    double rate = 0.0; // exponential rate for NotInWFa, else the fitted rate
    DecayFit fit;
    double kappa = 0.0; // trend exponent of the local decay rate
    int resolved = 0;
    std::string note;
};

// Trend exponent of the local rate -d log|Tu| / dt against t (log-log slope), fitted
// on the later half of the consecutive-sample rates so pre-asymptotic interference
// at small t does not count. NaN when a rate there is not positive.
inline double local_rate_trend(const std::vector<DecaySample>& s) {
    if (s.size() < 4) return std::nan("");
    const std::size_t rates = s.size() - 1, first = rates / 2;
    std::vector<double> lt, lr;
    for (std::size_t i = first; i < rates; ++i) {
        const double r = -(std::log(std::max(s[i + 1].magnitude, kMagnitudeFloor)) -
                           std::log(std::max(s[i].magnitude, kMagnitudeFloor))) /
                         (s[i + 1].t - s[i].t);
        if (!(r > 0.0)) return std::nan("");
        lt.push_back(std::log(0.5 * (s[i].t + s[i + 1].t)));
        lr.push_back(std::log(r));
    }
    return fit_line(lt, lr).slope;
}

// Exponential with rate >= b_min, r^2 >= threshold and a level local rate -> NotInWFa;
// Polynomial or non-decaying -> InWFa; everything else -> Inconclusive.
inline WfaVerdict classify(const std::vector<DecaySample>& samples, const WfaParams& p = {}) {
    WfaVerdict v;
    v.fit = fit_decay(samples, p.fit_threshold);
    v.rate = v.fit.rate;
    v.resolved = v.fit.sample_count;
    v.kappa = local_rate_trend(samples);
    switch (v.fit.model) {
    case DecayModel::Exponential:
        if (v.fit.rate < p.b_min) {
            v.note = "exponential rate below b_min";
        } else if (!(v.kappa >= p.kappa_min)) {
            v.note = "local decay rate falls off: sub-exponential";
        } else {
            v.status = WfaStatus::NotInWFa;
        }
        break;
    case DecayModel::Polynomial:
        v.status = WfaStatus::InWFa;
        break;
    case DecayModel::Flat:
        if (v.fit.rate <= 0.0) {
            v.status = WfaStatus::InWFa;
        } else {
            v.note = "no model reaches the r^2 threshold";
        }
        break;
    }
    return v;
}

namespace detail {

inline std::vector<DecaySample> leading_resolved(const std::vector<RaySample>& r) {
    std::vector<DecaySample> s;
    for (const auto& x : r) {
        if (!x.resolved) break;
        s.push_back({x.t, x.magnitude});
    }
    return s;
}

} // namespace detail

// One ray: scan, keep the leading run of resolved samples and classify. When fewer
// than 8 resolve, rescan 16 geometric points between the first and the last resolved t.
template <std::size_t N>
WfaVerdict classify_ray(const SampledFunction<N>& u, const Vec<N>& x0, const Vec<N>& omega, const WfaParams& p) {
    p.validate();
    auto samples = detail::leading_resolved(ray_scan(u, x0, omega, p.fbi, p.t_grid, p.resolve_floor));
    std::string note;
    if (samples.size() < static_cast<std::size_t>(kMinDecaySamples) && samples.size() >= 2) {
        const auto grid = geometric_grid(samples.front().t, samples.back().t, 16);
        samples = detail::leading_resolved(ray_scan(u, x0, omega, p.fbi, grid, p.resolve_floor));
        note = "rescanned resolved range";
    }
    WfaVerdict v;
    if (samples.size() < static_cast<std::size_t>(kMinDecaySamples)) {
        v.resolved = static_cast<int>(samples.size());
        v.note = "too few samples above the roundoff floor";
    } else {
        v = classify(samples, p);
        if (!note.empty()) v.note = v.note.empty() ? note : note + "; " + v.note;
    }
    v.x0.assign(x0.begin(), x0.end());
    v.omega.assign(omega.begin(), omega.end());
    return v;
}

// Every (x0, omega) pair, x-major. Single rays only: a cone around omega is sampled
// by the direction fan passed in, not covered. Output order is deterministic.
template <std::size_t N>
std::vector<WfaVerdict> wfa_scan(const SampledFunction<N>& u, const std::vector<Vec<N>>& x_grid,
                                 const std::vector<Vec<N>>& directions, const WfaParams& p) {
    p.validate();
    const std::size_t total = x_grid.size() * directions.size();
    std::vector<WfaVerdict> out(total);
    std::vector<std::exception_ptr> errors(total);
    auto work = [&](std::size_t k) {
        try {
            out[k] = classify_ray(u, x_grid[k / directions.size()], directions[k % directions.size()], p);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    };
    unsigned nt = p.threads ? p.threads : std::max(1u, std::thread::hardware_concurrency());
    nt = static_cast<unsigned>(std::min<std::size_t>(nt, total));
    if (nt <= 1) {
        for (std::size_t k = 0; k < total; ++k) work(k);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < nt; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t k = w; k < total; k += nt) work(k);
            });
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

} // namespace microlocal
