#pragma once

#include <cmath>

namespace microlocal {

struct AiryValue {
    double value;
    bool low_accuracy; // asymptotic regime beyond the validated range t < -30
};

namespace detail {

inline constexpr long double kAi0 = 0.355028053887817239260063186004183176L;
inline constexpr long double kMinusAiPrime0 = 0.258819403792806798405183560189203964L;
inline constexpr double kSqrtPi = 1.77245385090551602729816748334114518;
inline constexpr double kQuarterPi = 0.785398163397448309615660845819875721;

// Maclaurin series Ai(t) = Ai(0) f(t) + Ai'(0) g(t), summed in long double.
inline double airy_series(double t) {
    const long double x = t;
    const long double x3 = x * x * x;
    long double a = 1.0L, f = 1.0L;
    long double b = x, g = x;
    for (int k = 1; k < 400; ++k) {
        a *= x3 / ((3.0L * k - 1.0L) * (3.0L * k));
        b *= x3 / ((3.0L * k) * (3.0L * k + 1.0L));
        f += a;
        g += b;
        if (std::fabs(a) <= 1e-22L * std::fabs(f) && std::fabs(b) <= 1e-22L * (std::fabs(g) + 1e-300L)) break;
    }
    return static_cast<double>(kAi0 * f - kMinusAiPrime0 * g);
}

// Coefficients u_k of the large-argument expansion, u_0 = 1.
inline double airy_u(int k) {
    double u = 1.0;
    for (int j = 1; j <= k; ++j)
        u *= (6.0 * j - 5.0) * (6.0 * j - 3.0) * (6.0 * j - 1.0) / ((2.0 * j - 1.0) * 216.0 * j);
    return u;
}

// Ai(t), t > 0 large: exponentially small, optimally truncated.
inline double airy_asym_pos(double t) {
    const double zeta = 2.0 / 3.0 * t * std::sqrt(t);
    double sum = 0.0, term = 1.0, prev = INFINITY;
    for (int k = 0; k < 60; ++k) {
        if (k > 0) term = (k % 2 ? -1.0 : 1.0) * airy_u(k) / std::pow(zeta, k);
        if (std::fabs(term) >= prev) break;
        sum += term;
        prev = std::fabs(term);
        if (prev < 1e-18 * std::fabs(sum)) break;
    }
    return std::exp(-zeta) / (2.0 * kSqrtPi * std::pow(t, 0.25)) * sum;
}

// Ai(-x), x > 0 large: oscillatory two-series form.
inline double airy_asym_neg(double x) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    double even = 0.0, odd = 0.0, prev = INFINITY;
    for (int k = 0; k < 60; ++k) {
        const double term = airy_u(k) / std::pow(zeta, k);
        if (term >= prev) break;
        prev = term;
        const double sgn = ((k / 2) % 2) ? -1.0 : 1.0;
        if (k % 2 == 0)
            even += sgn * term;
        else
            odd += sgn * term;
        if (term < 1e-18) break;
    }
    const double phase = zeta - kQuarterPi;
    return (std::cos(phase) * even + std::sin(phase) * odd) / (kSqrtPi * std::pow(x, 0.25));
}

inline constexpr double kSeriesPos = 6.5;
inline constexpr double kSeriesNeg = 8.0;

} // namespace detail

// Standard Airy function (Ai'' = t Ai), with an accuracy flag.
inline AiryValue airy_ai_eval(double t) {
    if (t >= -detail::kSeriesNeg && t <= detail::kSeriesPos) return {detail::airy_series(t), false};
    if (t > 0) {
        if (t > 105.0) return {0.0, false}; // below the smallest subnormal
        return {detail::airy_asym_pos(t), false};
    }
    return {detail::airy_asym_neg(-t), t < -30.0};
}

inline double airy_ai(double t) { return airy_ai_eval(t).value; }

// Ai(-t): the solution of y'' + t y = 0 that is bounded as t -> -infinity.
inline double airy_ai_reflected(double t) { return airy_ai(-t); }

} // namespace microlocal
