#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <microlocal/numerics/decay_fit.hpp>

using namespace microlocal;

TEST(FitDecay, ExactExponential) {
    std::vector<DecaySample> s;
    for (int t = 1; t <= 10; ++t) s.push_back({double(t), std::exp(-2.0 * t)});
    const auto f = fit_decay(s);
    EXPECT_EQ(f.model, DecayModel::Exponential);
    EXPECT_NEAR(f.rate, 2.0, 1e-6);
    EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
    EXPECT_EQ(f.sample_count, 10);
}

TEST(FitDecay, ExactPowerLaw) {
    std::vector<DecaySample> s;
    for (int t = 1; t <= 10; ++t) s.push_back({double(t), std::pow(t, -3.0)});
    const auto f = fit_decay(s);
    EXPECT_EQ(f.model, DecayModel::Polynomial);
    EXPECT_NEAR(f.rate, 3.0, 1e-9);
}

TEST(FitDecay, ConstantIsFlatWithPerfectFit) {
    std::vector<DecaySample> s;
    for (int t = 1; t <= 9; ++t) s.push_back({double(t), 0.25});
    const auto f = fit_decay(s);
    EXPECT_EQ(f.model, DecayModel::Flat);
    EXPECT_EQ(f.r_squared, 1.0);
}

TEST(FitDecay, GrowthIsFlat) {
    std::vector<DecaySample> s;
    for (int t = 1; t <= 9; ++t) s.push_back({double(t), std::exp(0.3 * t)});
    EXPECT_EQ(fit_decay(s).model, DecayModel::Flat);
}

TEST(FitDecay, NoiseIsFlatWithLowFit) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.1, 1.0);
    std::vector<DecaySample> s;
    for (int t = 1; t <= 16; ++t) s.push_back({double(t), U(rng)});
    const auto f = fit_decay(s);
    EXPECT_EQ(f.model, DecayModel::Flat);
    EXPECT_LT(f.r_squared, kDefaultFitThreshold);
}

TEST(FitDecay, ZeroMagnitudesAreFloored) {
    std::vector<DecaySample> s;
    for (int t = 1; t <= 8; ++t) s.push_back({double(t), t < 8 ? std::exp(-t) : 0.0});
    EXPECT_NO_THROW(fit_decay(s));
}

TEST(FitDecay, Preconditions) {
    std::vector<DecaySample> s;
    for (int t = 1; t <= 7; ++t) s.push_back({double(t), 1.0 / t});
    EXPECT_THROW(fit_decay(s), InsufficientSamples);
    s.push_back({7.0, 0.1});
    EXPECT_THROW(fit_decay(s), std::invalid_argument);
}

TEST(FitDecayProperty, ScaleInvariance) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double b = 0.05 + U(rng), p = 3 * U(rng), c = std::exp(20 * (U(rng) - 0.5));
        std::vector<DecaySample> s, sc;
        for (int i = 0; i < 12; ++i) {
            const double t = 4.0 * std::pow(1.3, i);
            const double m = std::exp(-b * t) * std::pow(t, -p) * (1 + 0.05 * std::sin(3.0 * i));
            s.push_back({t, m});
            sc.push_back({t, c * m});
        }
        const auto f = fit_decay(s), g = fit_decay(sc);
        EXPECT_EQ(f.model, g.model);
        EXPECT_NEAR(f.rate, g.rate, 1e-9 * std::max(1.0, std::abs(f.rate)));
    }
}
