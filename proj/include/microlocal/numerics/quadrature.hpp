#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace microlocal {

using cplx = std::complex<double>;

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_depth = 50;
    // Terms below truncation_floor * peak are dropped at infinite ends.
    double truncation_floor = 1e-16;

    void validate() const {
        if (!(rel_tol > 0.0 && rel_tol <= 1e-2))
            throw std::invalid_argument("QuadratureSpec: rel_tol must lie in (0, 1e-2]");
        if (!(abs_tol >= 0.0))
            throw std::invalid_argument("QuadratureSpec: abs_tol must be >= 0");
        if (max_depth < 4)
            throw std::invalid_argument("QuadratureSpec: max_depth must be >= 4");
        if (!(truncation_floor > 0.0 && truncation_floor < 1.0))
            throw std::invalid_argument("QuadratureSpec: truncation_floor must lie in (0, 1)");
    }
};

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    double l1 = 0.0; // integral of |f|, used for the roundoff floor
    long evaluations = 0;
};

struct Interval {
    double lo;
    double hi;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const cplx& v) { return std::abs(v); }

// 21-point Kronrod extension of the 10-point Gauss rule (abscissae descending).
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077715264591480, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for kXgk[1], kXgk[3], ..., kXgk[9].
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
struct Panel {
    double a, b;
    T value;
    double error;
    double l1;
    int depth;
};

template <class T, class F>
Panel<T> gk21(F& f, double a, double b, int depth) {
    const double c = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    std::array<T, 21> fv;
    fv[10] = f(c);
    for (int j = 0; j < 10; ++j) {
        const double dx = hl * kXgk[j];
        fv[j] = f(c - dx);
        fv[20 - j] = f(c + dx);
    }
    T rk = fv[10] * kWgk[10];
    T rg{};
    double l1 = std::abs(kWgk[10]) * magnitude(fv[10]);
    for (int j = 0; j < 10; ++j) {
        const T s = fv[j] + fv[20 - j];
        rk += kWgk[j] * s;
        l1 += kWgk[j] * (magnitude(fv[j]) + magnitude(fv[20 - j]));
        if (j % 2 == 1) rg += kWg[j / 2] * s;
    }
    const T mean = 0.5 * rk;
    double asc = kWgk[10] * magnitude(fv[10] - mean);
    for (int j = 0; j < 10; ++j)
        asc += kWgk[j] * (magnitude(fv[j] - mean) + magnitude(fv[20 - j] - mean));

    const double w = std::abs(hl);
    double err = magnitude(rk - rg) * w;
    asc *= w;
    l1 *= w;
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (l1 > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * l1, err);
    return Panel<T>{a, b, rk * hl, err, l1, depth};
}

template <class T>
bool error_less(const Panel<T>& p, const Panel<T>& q) {
    if (p.error != q.error) return p.error < q.error;
    return p.a > q.a; // deterministic tie-break: leftmost first
}

} // namespace detail

// Globally adaptive Gauss-Kronrod (G10/K21) on a finite interval, with optional
// interior breakpoints. Throws NonConvergent when a panel needs splitting past
// spec.max_depth bisections.
template <class F>
auto integrate_gk(F&& f, double a, double b, const QuadratureSpec& spec,
                  const std::vector<double>& breakpoints = {})
    -> QuadResult<std::decay_t<decltype(f(0.0))>> {
    using T = std::decay_t<decltype(f(0.0))>;
    spec.validate();
    QuadResult<T> out;
    if (a == b) return out;
    const double sign = b > a ? 1.0 : -1.0;
    if (sign < 0) std::swap(a, b);

    std::vector<double> cuts{a};
    for (double p : breakpoints)
        if (p > a && p < b) cuts.push_back(p);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());

    std::vector<detail::Panel<T>> heap;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        heap.push_back(detail::gk21<T>(f, cuts[i], cuts[i + 1], 0));
        out.evaluations += 21;
    }
    auto cmp = [](const auto& p, const auto& q) { return detail::error_less(p, q); };
    std::make_heap(heap.begin(), heap.end(), cmp);

    const double eps = std::numeric_limits<double>::epsilon();
    constexpr std::size_t kMaxPanels = 200000;
    // Running sums, refreshed exactly before any convergence decision.
    T total{};
    double err = 0.0, l1 = 0.0;
    auto resum = [&] {
        total = T{};
        err = l1 = 0.0;
        for (const auto& p : heap) {
            total += p.value;
            err += p.error;
            l1 += p.l1;
        }
    };
    auto finish = [&] {
        out.value = sign * total;
        out.error = err;
        out.l1 = l1;
        return out;
    };
    auto tolerance = [&] { return std::max({spec.abs_tol, spec.rel_tol * detail::magnitude(total), 50.0 * eps * l1}); };
    resum();
    for (;;) {
        if (err <= tolerance() || l1 == 0.0) {
            resum();
            if (err <= tolerance() || l1 == 0.0) return finish();
        }
        std::pop_heap(heap.begin(), heap.end(), cmp);
        detail::Panel<T> worst = heap.back();
        // Every panel is at its roundoff floor: refinement cannot help.
        if (worst.error <= 50.0 * eps * worst.l1 * (1.0 + 1e-9)) {
            std::push_heap(heap.begin(), heap.end(), cmp);
            resum();
            return finish();
        }
        heap.pop_back();
        if (worst.depth >= spec.max_depth || heap.size() + 2 > kMaxPanels) {
            resum();
            throw NonConvergent("adaptive quadrature: subdivision depth exhausted", err);
        }
        const double m = 0.5 * (worst.a + worst.b);
        auto left = detail::gk21<T>(f, worst.a, m, worst.depth + 1);
        auto right = detail::gk21<T>(f, m, worst.b, worst.depth + 1);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), cmp);
        out.evaluations += 42;
    }
}

namespace detail {

// Double-exponential quadrature on an infinite or half-infinite range after the
// substitution x = map(t). A first pass at step 1/4 over |t| <= 6.5 fixes the
// truncation window (terms above floor * peak, plus two steps of margin); later
// levels halve the step and add the odd nodes inside that window.
template <class T, class F, class Map>
QuadResult<T> de_integrate(F& f, Map map, const QuadratureSpec& spec) {
    constexpr double kTmax = 6.5;
    constexpr double kH0 = 0.25;
    constexpr int kMaxLevels = 10;
    const int levels = std::min(kMaxLevels, spec.max_depth);
    const double eps = std::numeric_limits<double>::epsilon();

    QuadResult<T> out;
    auto term = [&](double t, T& value) -> bool {
        const auto [x, dx] = map(t);
        if (!std::isfinite(x) || !std::isfinite(dx)) return false;
        ++out.evaluations;
        value = dx == 0.0 ? T{} : f(x) * dx;
        return true;
    };

    const int kmax = static_cast<int>(kTmax / kH0);
    std::vector<T> coarse(2 * kmax + 1);
    std::vector<char> valid(2 * kmax + 1, 0);
    double peak = 0.0;
    for (int dir : {+1, -1}) {
        for (int k = (dir > 0 ? 0 : 1); k <= kmax; ++k) {
            const int idx = kmax + dir * k;
            if (!term(dir * k * kH0, coarse[idx])) break;
            valid[idx] = 1;
            peak = std::max(peak, magnitude(coarse[idx]));
        }
    }
    if (peak == 0.0) return out;
    int lo = 2 * kmax, hi = 0;
    for (int i = 0; i <= 2 * kmax; ++i) {
        if (valid[i] && magnitude(coarse[i]) > spec.truncation_floor * peak) {
            lo = std::min(lo, i);
            hi = std::max(hi, i);
        }
    }
    lo = std::max(lo - 2, 0);
    hi = std::min(hi + 2, 2 * kmax);
    while (!valid[lo]) ++lo;
    while (!valid[hi]) --hi;
    const double tlo = (lo - kmax) * kH0, thi = (hi - kmax) * kH0;

    T sum{};
    double abs_sum = 0.0;
    for (int i = lo; i <= hi; ++i) {
        sum += coarse[i];
        abs_sum += magnitude(coarse[i]);
    }
    double h = kH0;
    T prev = h * sum;
    for (int level = 1; level <= levels; ++level) {
        h *= 0.5;
        const long n_odd = std::lround((thi - tlo) / (2 * h));
        for (long j = 0; j < n_odd; ++j) {
            T v;
            if (term(tlo + (2 * j + 1) * h, v)) {
                sum += v;
                abs_sum += magnitude(v);
            }
        }
        const T cur = h * sum;
        const double diff = magnitude(cur - prev);
        const double l1 = h * abs_sum;
        const double tol = std::max({spec.abs_tol, spec.rel_tol * magnitude(cur), 50.0 * eps * l1});
        prev = cur;
        out.error = diff;
        if (level >= 2 && diff <= tol) {
            out.value = cur;
            out.l1 = l1;
            return out;
        }
    }
    throw NonConvergent("double-exponential quadrature: level limit reached", out.error);
}

} // namespace detail

// Integral of f over a possibly infinite interval. Finite ranges use adaptive
// Gauss-Kronrod; infinite ends use exp-sinh / sinh-sinh substitutions.
template <class F>
auto integrate_decaying(F&& f, Interval dom, const QuadratureSpec& spec)
    -> QuadResult<std::decay_t<decltype(f(0.0))>> {
    using T = std::decay_t<decltype(f(0.0))>;
    spec.validate();
    const bool lo_inf = std::isinf(dom.lo);
    const bool hi_inf = std::isinf(dom.hi);
    if (!lo_inf && !hi_inf) return integrate_gk(f, dom.lo, dom.hi, spec);
    if (dom.lo >= dom.hi && !(lo_inf && hi_inf && dom.lo < 0 && dom.hi > 0))
        throw std::invalid_argument("integrate_decaying: empty or reversed interval");

    constexpr double kHalfPi = 1.57079632679489661923;
    if (lo_inf && hi_inf) {
        auto map = [](double t) {
            const double s = kHalfPi * std::sinh(t);
            return std::pair<double, double>{std::sinh(s), kHalfPi * std::cosh(t) * std::cosh(s)};
        };
        return detail::de_integrate<T>(f, map, spec);
    }
    if (hi_inf) {
        const double a = dom.lo;
        auto map = [a](double t) {
            const double e = std::exp(kHalfPi * std::sinh(t));
            return std::pair<double, double>{a + e, kHalfPi * std::cosh(t) * e};
        };
        return detail::de_integrate<T>(f, map, spec);
    }
    const double b = dom.hi;
    auto map = [b](double t) {
        const double e = std::exp(kHalfPi * std::sinh(t));
        return std::pair<double, double>{b - e, kHalfPi * std::cosh(t) * e};
    };
    return detail::de_integrate<T>(f, map, spec);
}

} // namespace microlocal
