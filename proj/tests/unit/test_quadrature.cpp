#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include <microlocal/numerics/airy.hpp>
#include <microlocal/numerics/quadrature.hpp>

using namespace microlocal;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt2Pi = std::sqrt(2.0 * M_PI);
} // namespace

TEST(KronrodRule, ExactForDegree30) {
    auto f = [](double x) { return std::pow(x, 30); };
    auto p = detail::gk21<double>(f, -1.0, 1.0, 0);
    EXPECT_NEAR(p.value, 2.0 / 31.0, 1e-15);
}

TEST(KronrodRule, GaussAgreesForDegree18) {
    auto f = [](double x) { return std::pow(x, 18) + 0.5 * x; };
    auto p = detail::gk21<double>(f, -1.0, 1.0, 0);
    EXPECT_NEAR(p.value, 2.0 / 19.0, 1e-15);
    EXPECT_LT(p.error, 1e-13);
}

TEST(KronrodRule, WeightsSumToTwo) {
    double k = detail::kWgk[10], g = 0.0;
    for (int j = 0; j < 10; ++j) k += 2 * detail::kWgk[j];
    for (double w : detail::kWg) g += 2 * w;
    EXPECT_NEAR(k, 2.0, 1e-15);
    EXPECT_NEAR(g, 2.0, 1e-15);
}

TEST(IntegrateDecaying, ExponentialHalfLine) {
    auto r = integrate_decaying([](double t) { return std::exp(-t); }, {0.0, kInf}, QuadratureSpec{});
    EXPECT_NEAR(r.value, 1.0, 1e-12);
}

TEST(IntegrateDecaying, GaussianWholeLine) {
    auto r = integrate_decaying([](double y) { return std::exp(-y * y / 2); }, {-kInf, kInf}, QuadratureSpec{});
    EXPECT_NEAR(r.value, kSqrt2Pi, 1e-12);
}

TEST(IntegrateDecaying, AiryAtOriginTimesExponential) {
    auto r = integrate_decaying(
        [](double t) { return airy_ai(std::pow(t, 4.0 / 3.0) * 0.0) * std::exp(-t); }, {0.0, kInf},
        QuadratureSpec{});
    EXPECT_NEAR(r.value, airy_ai(0.0), 1e-10);
}

TEST(IntegrateDecaying, LowerHalfLine) {
    auto r = integrate_decaying([](double t) { return std::exp(2.0 * t); }, {-kInf, 1.0}, QuadratureSpec{});
    EXPECT_NEAR(r.value, std::exp(2.0) / 2.0, 1e-12 * std::exp(2.0));
}

TEST(IntegrateDecaying, ComplexGaussianFourier) {
    const double k = 3.0;
    auto f = [k](double y) { return std::exp(cplx(-y * y / 2, k * y)); };
    auto r = integrate_decaying(f, {-kInf, kInf}, QuadratureSpec{});
    EXPECT_NEAR(std::abs(r.value - kSqrt2Pi * std::exp(-k * k / 2)), 0.0, 1e-12);
}

TEST(IntegrateDecaying, FiniteIntervalEndpointSingularity) {
    auto r = integrate_decaying([](double x) { return std::sqrt(x); }, {0.0, 1.0}, QuadratureSpec{});
    EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-12);
}

TEST(IntegrateDecaying, InteriorKinkAndJump) {
    auto kink = integrate_gk([](double x) { return std::abs(x - 0.3); }, -1.0, 1.0, QuadratureSpec{});
    EXPECT_NEAR(kink.value, 0.5 * (1.3 * 1.3 + 0.7 * 0.7), 1e-12);
    auto jump = integrate_gk([](double x) { return x > 0.1 ? 1.0 : 0.0; }, -1.0, 1.0, QuadratureSpec{});
    EXPECT_NEAR(jump.value, 0.9, 1e-10);
}

TEST(IntegrateDecaying, ReversedFiniteIntervalFlipsSign) {
    auto r = integrate_gk([](double x) { return x * x; }, 1.0, 0.0, QuadratureSpec{});
    EXPECT_NEAR(r.value, -1.0 / 3.0, 1e-14);
}

TEST(IntegrateDecaying, DepthExhaustionReportsEstimate) {
    QuadratureSpec spec;
    spec.max_depth = 4;
    try {
        integrate_gk([](double x) { return 1.0 / x; }, 0.0, 1.0, spec);
        FAIL() << "expected NonConvergent";
    } catch (const NonConvergent& e) {
        EXPECT_GT(e.error_estimate(), 0.0);
    }
}

TEST(IntegrateDecaying, SpecValidation) {
    QuadratureSpec s;
    s.rel_tol = 0.1;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s.rel_tol = 1e-8;
    s.max_depth = 3;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s.max_depth = 4;
    EXPECT_NO_THROW(s.validate());
}

TEST(IntegrateDecaying, Deterministic) {
    auto f = [](double y) { return std::exp(cplx(-y * y, 5 * y)) * std::cos(y); };
    auto a = integrate_decaying(f, {-kInf, kInf}, QuadratureSpec{});
    auto b = integrate_decaying(f, {-kInf, kInf}, QuadratureSpec{});
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(IntegrateDecayingProperty, LinearOnGaussianEnvelopedIntegrands) {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const QuadratureSpec spec{1e-10, 0.0, 50, 1e-16};
    for (int trial = 0; trial < 25; ++trial) {
        const double c1 = U(rng), c2 = U(rng), s1 = 1.2 + U(rng), s2 = 1.2 + U(rng);
        const double k1 = 4 * U(rng), k2 = 4 * U(rng);
        const cplx a(U(rng), U(rng)), b(U(rng), U(rng));
        auto f = [=](double y) { return std::exp(cplx(-(y - c1) * (y - c1) / (s1 * s1), k1 * y)); };
        auto g = [=](double y) { return std::exp(-(y - c2) * (y - c2) / (s2 * s2)) * std::cos(k2 * y); };
        auto fg = [&](double y) { return a * f(y) + b * g(y); };
        const Interval dom{-kInf, kInf};
        const auto If = integrate_decaying(f, dom, spec);
        const auto Ig = integrate_decaying(g, dom, spec);
        const auto Ifg = integrate_decaying(fg, dom, spec);
        const double scale = std::abs(a) * If.l1 + std::abs(b) * Ig.l1;
        EXPECT_LE(std::abs(Ifg.value - (a * If.value + b * Ig.value)), 10 * spec.rel_tol * scale)
            << "trial " << trial;
    }
}
