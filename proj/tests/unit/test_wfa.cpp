#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <microlocal/model1d/airy_solution.hpp>
#include <microlocal/weights/cutoff.hpp>
#include <microlocal/wfa.hpp>

using namespace microlocal;

namespace {

SampledFunction<1> gaussian() {
    return {[](const Vec<1>& y) { return cplx(std::exp(-0.5 * y[0] * y[0])); }, Analyticity::Analytic, {}};
}

SampledFunction<1> kink() {
    return {[](const Vec<1>& y) { return cplx(std::abs(y[0]) * std::exp(-y[0] * y[0])); }, Analyticity::SingularAt,
            {0.0}};
}

SampledFunction<1> step() {
    return {[](const Vec<1>& y) { return cplx(y[0] > 0.0 ? std::exp(-0.5 * y[0] * y[0]) : 0.0); },
            Analyticity::SingularAt, {0.0}};
}

std::vector<DecaySample> synthetic(double (*f)(double)) {
    std::vector<DecaySample> s;
    for (double t : geometric_grid(4.0, 256.0, 16)) s.push_back({t, f(t)});
    return s;
}

WfaParams serial() {
    WfaParams p;
    p.threads = 1;
    return p;
}

// |Tu(x, xi)| for u = e^{-y^2/2} by completing the square.
double gaussian_oracle(double x, double xi, double h) {
    const double w = std::sqrt(1.0 + xi * xi);
    const cplx a = w / (2.0 * h) + 0.5;
    const cplx b = cplx(w * x / h, -xi / h);
    const cplx c = cplx(-w * x * x / (2.0 * h), x * xi / h);
    return std::abs(std::pow(h, -0.75) * std::pow(w, 0.25) * std::sqrt(M_PI / a) * std::exp(b * b / (4.0 * a) + c));
}

} // namespace

TEST(Classify, ExponentialIsNotInWFa) {
    const auto v = classify(synthetic([](double t) { return 3.0 * std::exp(-0.2 * t); }));
    EXPECT_EQ(v.status, WfaStatus::NotInWFa);
    EXPECT_NEAR(v.rate, 0.2, 1e-10);
}

TEST(Classify, ConstantIsInWFa) {
    const auto v = classify(synthetic([](double) { return 0.7; }));
    EXPECT_EQ(v.status, WfaStatus::InWFa);
    EXPECT_EQ(v.fit.model, DecayModel::Flat);
}

TEST(Classify, PolynomialIsInWFa) {
    const auto v = classify(synthetic([](double t) { return std::pow(t, -2.5); }));
    EXPECT_EQ(v.status, WfaStatus::InWFa);
    EXPECT_EQ(v.fit.model, DecayModel::Polynomial);
}

TEST(Classify, SlowExponentialBelowFloorIsInconclusive) {
    const auto v = classify(synthetic([](double t) { return std::exp(-0.001 * t); }));
    EXPECT_EQ(v.status, WfaStatus::Inconclusive);
}

TEST(Classify, SubExponentialIsNeverNotInWFa) {
    // Gevrey-type decay e^{-2 t^{1/2}}: the local rate falls like t^{-1/2}.
    const auto v = classify(synthetic([](double t) { return std::exp(-2.0 * std::sqrt(t)); }));
    EXPECT_NE(v.status, WfaStatus::NotInWFa);
    EXPECT_NEAR(v.kappa, -0.5, 0.05);
}

TEST(Classify, NeedsEightSamples) {
    std::vector<DecaySample> s;
    for (int i = 1; i <= 7; ++i) s.push_back({double(i), std::exp(-double(i))});
    EXPECT_THROW(classify(s), InsufficientSamples);
}

TEST(RayScan, GaussianMatchesOracleAndDecreases) {
    const WfaParams p;
    const auto r = ray_scan<1>(gaussian(), {0.4}, {-1.0}, p.fbi, p.t_grid, p.resolve_floor);
    ASSERT_EQ(r.size(), p.t_grid.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!r[i].resolved) break;
        const double o = gaussian_oracle(0.4, -r[i].t, p.fbi.h);
        // Accurate to the roundoff floor of the oscillatory integral.
        EXPECT_NEAR(r[i].magnitude, o, 1e-8 * o + 1e-12 * r[i].l1) << "t=" << r[i].t;
        if (i > 0) {
            EXPECT_LT(r[i].magnitude, r[i - 1].magnitude);
        }
    }
}

TEST(RayScan, RejectsBadInput) {
    const WfaParams p;
    EXPECT_THROW(ray_scan<1>(gaussian(), {0.0}, {0.5}, p.fbi, p.t_grid), std::invalid_argument);
    EXPECT_THROW(ray_scan<1>(gaussian(), {0.0}, {1.0}, p.fbi, {1.0, 2000.0}), std::invalid_argument);
    EXPECT_THROW(ray_scan<1>(gaussian(), {0.0}, {1.0}, p.fbi, {3.0, 2.0}), std::invalid_argument);
}

TEST(RayScan, KinkExponentStableUnderRefinement) {
    // Polynomial exponent of the kink at 0 from 16 and from 32 samples of the same range.
    WfaParams p = serial();
    const auto coarse = classify_ray<1>(kink(), {0.0}, {1.0}, p);
    p.t_grid = geometric_grid(4.0, 256.0, 32);
    const auto fine = classify_ray<1>(kink(), {0.0}, {1.0}, p);
    ASSERT_EQ(coarse.fit.model, DecayModel::Polynomial);
    ASSERT_EQ(fine.fit.model, DecayModel::Polynomial);
    EXPECT_NEAR(fine.rate / coarse.rate, 1.0, 0.05);
    EXPECT_GT(coarse.rate, 1.0);
}

TEST(WfaScan, GaussianAtRandomPointsIsNotInWFa) {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> ux(-2.0, 2.0);
    std::bernoulli_distribution sign;
    for (int i = 0; i < 5; ++i) {
        const double x0 = ux(rng), om = sign(rng) ? 1.0 : -1.0;
        const auto v = classify_ray<1>(gaussian(), {x0}, {om}, serial());
        EXPECT_EQ(v.status, WfaStatus::NotInWFa) << "x0=" << x0 << " omega=" << om << " " << v.note;
    }
}

TEST(WfaScan, KinkIsInWFaExactlyAtZero) {
    const std::vector<Vec<1>> xs{{-1.0}, {-0.5}, {0.0}, {0.5}, {1.0}}, dirs{{1.0}, {-1.0}};
    WfaParams p = serial();
    for (int pass = 0; pass < 2; ++pass) {
        const auto vs = wfa_scan<1>(kink(), xs, dirs, p);
        ASSERT_EQ(vs.size(), 10u);
        for (const auto& v : vs) {
            const auto want = v.x0[0] == 0.0 ? WfaStatus::InWFa : WfaStatus::NotInWFa;
            EXPECT_EQ(v.status, want) << "x0=" << v.x0[0] << " omega=" << v.omega[0] << " pass=" << pass << " "
                                      << v.note;
        }
        p.t_grid = geometric_grid(4.0, 256.0, 32); // doubled resolution
    }
}

TEST(WfaScan, OutputOrderIsDeterministic) {
    const std::vector<Vec<1>> xs{{0.0}, {0.5}}, dirs{{1.0}, {-1.0}};
    WfaParams p;
    p.threads = 3;
    const auto a = wfa_scan<1>(kink(), xs, dirs, p);
    const auto b = wfa_scan<1>(kink(), xs, dirs, serial());
    ASSERT_EQ(a.size(), 4u);
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a[k].x0, b[k].x0);
        EXPECT_EQ(a[k].omega, b[k].omega);
        EXPECT_EQ(a[k].status, b[k].status);
        EXPECT_EQ(a[k].rate, b[k].rate);
    }
    EXPECT_EQ(a[0].x0[0], 0.0);
    EXPECT_EQ(a[1].omega[0], -1.0);
    EXPECT_EQ(a[2].x0[0], 0.5);
}

TEST(WfaScan, StepIsInWFaAtZero) {
    for (double om : {1.0, -1.0}) {
        const auto v = classify_ray<1>(step(), {0.0}, {om}, serial());
        EXPECT_EQ(v.status, WfaStatus::InWFa) << om;
    }
    EXPECT_EQ(classify_ray<1>(step(), {0.7}, {1.0}, serial()).status, WfaStatus::NotInWFa);
}

TEST(WfaScan, AiryProfileIsNeverNotInWFa) {
    // x1-profile of the Tricomi solution on x2 = 0, Gaussian window; non-analytic at 0.
    const SampledFunction<1> u{[](const Vec<1>& y) { return airy_solution(y[0], 0.0) * std::exp(-0.5 * y[0] * y[0]); },
                               Analyticity::SingularAt, {0.0}};
    for (double om : {1.0, -1.0}) {
        const auto v = classify_ray<1>(u, {0.0}, {om}, serial());
        EXPECT_NE(v.status, WfaStatus::NotInWFa) << om << " rate=" << v.rate << " kappa=" << v.kappa;
        RecordProperty(om > 0 ? "airy_plus" : "airy_minus", to_string(v.status));
    }
}

TEST(WfaProperties, ScaleInvariance) {
    const cplx c(-3.0, 2.0);
    const auto base = kink();
    const SampledFunction<1> scaled{[&](const Vec<1>& y) { return c * base(y); }, Analyticity::SingularAt, {0.0}};
    for (double x0 : {0.0, 0.5, -1.0}) {
        const auto a = classify_ray<1>(base, {x0}, {1.0}, serial());
        const auto b = classify_ray<1>(scaled, {x0}, {1.0}, serial());
        EXPECT_EQ(a.status, b.status) << x0;
        EXPECT_NEAR(a.rate, b.rate, 1e-6 * std::abs(a.rate) + 1e-9);
    }
}

TEST(WfaProperties, WindowIndependence) {
    // Multiply by a smooth window equal to 1 on [x0 - 1, x0 + 1].
    for (double x0 : {0.0, 0.5}) {
        const auto base = kink();
        const SampledFunction<1> windowed{[&, x0](const Vec<1>& y) { return chi(y[0] - x0) * base(y); },
                                          Analyticity::SingularAt, {0.0, x0 - 2, x0 - 1, x0 + 1, x0 + 2}};
        for (double om : {1.0, -1.0}) {
            const auto a = classify_ray<1>(base, {x0}, {om}, serial());
            const auto b = classify_ray<1>(windowed, {x0}, {om}, serial());
            EXPECT_EQ(a.status, b.status) << "x0=" << x0 << " omega=" << om;
        }
    }
}

TEST(WfaProperties, ConicClosednessProxy) {
    // 2-D: a kink across y1 = 0. At x0 = (0.5, 0) direction e1 is NotInWFa; nearby
    // directions must not come out InWFa.
    const SampledFunction<2> u{[](const Vec<2>& y) {
                                   return cplx(std::abs(y[0]) * std::exp(-y[0] * y[0] - 0.5 * y[1] * y[1]));
                               },
                               Analyticity::SingularAt, {}};
    WfaParams p = serial();
    p.fbi.quad.rel_tol = 1e-10;
    const Vec<2> x0{0.5, 0.0};
    const auto centre = classify_ray<2>(u, x0, {1.0, 0.0}, p);
    ASSERT_EQ(centre.status, WfaStatus::NotInWFa) << centre.note;
    for (double ang : {-0.05, 0.05}) {
        const auto v = classify_ray<2>(u, x0, {std::cos(ang), std::sin(ang)}, p);
        EXPECT_NE(v.status, WfaStatus::InWFa) << ang;
    }
}

TEST(WfaReport, JsonFields) {
    const auto vs = wfa_scan<1>(kink(), {{0.0}}, {{1.0}}, serial());
    const auto j = wfa_report(vs);
    ASSERT_EQ(j.size(), 1u);
    for (const char* k : {"x0", "omega", "verdict", "rate", "r2"}) EXPECT_TRUE(j[0].contains(k)) << k;
    EXPECT_EQ(j[0]["verdict"], "InWFa");
    EXPECT_EQ(j[0]["scope"], "single ray");
}
