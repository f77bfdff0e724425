#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <microlocal/phase_space.hpp>

using namespace microlocal;

namespace {
const SymbolSpec kKeldysh{SymbolKind::Keldysh};
const SymbolSpec kTricomi{SymbolKind::Tricomi};
const SymbolSpec kNormal1{SymbolKind::NormalForm, 1};
} // namespace

TEST(EvalSymbol, Examples) {
    EXPECT_EQ(eval_symbol(kKeldysh, PhaseSpacePoint<2>{{0.0, 0.3}, {2.0, 0.0}}), 0.0);
    EXPECT_NEAR(eval_symbol(kTricomi, PhaseSpacePoint<2>{{-1.0, 0.0}, {1.0, 1.0}}), 0.0, 1e-15);
    EXPECT_EQ(eval_symbol(kNormal1, PhaseSpacePoint<1>{{2.0}, {3.0}}), -6.0);
    EXPECT_EQ(eval_symbol(SymbolSpec{SymbolKind::NormalForm, 3}, PhaseSpacePoint<2>{{2.0, 5.0}, {3.0, 7.0}}), -54.0);
}

TEST(EvalSymbol, TwoDimensionalSymbolsRejectOneDimension) {
    EXPECT_THROW(eval_symbol(kKeldysh, PhaseSpacePoint<1>{{0.0}, {1.0}}), std::invalid_argument);
}

TEST(HamiltonianField, KeldyshOnLambdaPlus) {
    for (double k : {0.5, 1.0, 3.0}) {
        const auto h = hamiltonian_field(kKeldysh, PhaseSpacePoint<2>{{0.0, 0.0}, {k, 0.0}});
        EXPECT_EQ(h.dx[0], 0.0);
        EXPECT_EQ(h.dx[1], 0.0);
        EXPECT_EQ(h.dxi[0], -k * k);
        EXPECT_EQ(h.dxi[1], 0.0);
    }
}

TEST(HamiltonianField, NormalFormIsHyperbolicScaling) {
    const auto h = hamiltonian_field(kNormal1, PhaseSpacePoint<1>{{0.7}, {-2.5}});
    EXPECT_EQ(h.dx[0], -0.7);
    EXPECT_EQ(h.dxi[0], -2.5);
}

TEST(HamiltonianField, TricomiAtOrigin) {
    const auto h = hamiltonian_field(kTricomi, PhaseSpacePoint<2>{{0.0, 0.0}, {0.0, 1.0}});
    EXPECT_EQ(h.dx[0], 0.0);
    EXPECT_EQ(h.dx[1], 0.0);
    EXPECT_EQ(h.dxi[0], -1.0);
    EXPECT_EQ(h.dxi[1], 0.0);
}

namespace {
template <std::size_t N>
HamiltonField<N> fd_field(const SymbolSpec& s, PhaseSpacePoint<N> p, double d) {
    HamiltonField<N> h;
    for (std::size_t i = 0; i < N; ++i) {
        auto a = p, b = p;
        a.xi[i] += d;
        b.xi[i] -= d;
        h.dx[i] = (eval_symbol(s, a) - eval_symbol(s, b)) / (2 * d);
        a = p;
        b = p;
        a.x[i] += d;
        b.x[i] -= d;
        h.dxi[i] = -(eval_symbol(s, a) - eval_symbol(s, b)) / (2 * d);
    }
    return h;
}
} // namespace

TEST(HamiltonianFieldProperty, MatchesCentralDifferences) {
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (const auto& s : {kKeldysh, kTricomi, kNormal1, SymbolSpec{SymbolKind::NormalForm, 3}}) {
        for (int i = 0; i < 100; ++i) {
            const PhaseSpacePoint<2> p{{U(rng), U(rng)}, {U(rng), U(rng)}};
            const auto h = hamiltonian_field(s, p);
            const auto f = fd_field(s, p, 1e-5);
            for (int j = 0; j < 2; ++j) {
                EXPECT_NEAR(h.dx[j], f.dx[j], 1e-6);
                EXPECT_NEAR(h.dxi[j], f.dxi[j], 1e-6);
            }
        }
    }
}

TEST(Flow, ZeroTimeIsIdentity) {
    const PhaseSpacePoint<2> p{{0.3, -0.2}, {1.0, 2.0}};
    const auto tr = flow(kTricomi, p, 0.0, 32);
    ASSERT_EQ(tr.size(), 1u);
    EXPECT_EQ(tr[0].x, p.x);
    EXPECT_EQ(tr[0].xi, p.xi);
}

TEST(Flow, StepsPrecondition) {
    EXPECT_THROW(flow(kKeldysh, PhaseSpacePoint<2>{}, 1.0, 15), std::invalid_argument);
}

TEST(Flow, KeldyshLambdaPlusMatchesExactSolution) {
    const auto tr = flow(kKeldysh, PhaseSpacePoint<2>{{0.0, 0.0}, {1.0, 0.0}}, 1.0, 1024);
    ASSERT_EQ(tr.size(), 1025u);
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const double t = i / 1024.0;
        EXPECT_LE(std::abs(tr[i].x[0]), 1e-12);
        EXPECT_LE(std::abs(tr[i].xi[1]), 1e-12);
        EXPECT_NEAR(tr[i].xi[0] * (1.0 + t), 1.0, 1e-8);
        if (i > 0) {
            EXPECT_LT(tr[i].xi[0], tr[i - 1].xi[0]);
        }
    }
}

TEST(Flow, KeldyshLambdaMinusStaysInvariant) {
    const auto tr = flow(kKeldysh, PhaseSpacePoint<2>{{0.0, 0.4}, {-2.0, 0.0}}, 0.4, 256);
    for (const auto& p : tr) {
        EXPECT_LE(std::max(std::abs(p.x[0]), std::abs(p.xi[1])), 1e-10);
        EXPECT_LT(p.xi[0], 0.0);
    }
}

TEST(Flow, TricomiCharacteristicReachesBoundary) {
    const int steps = 2048;
    const double T = 2.0;
    const PhaseSpacePoint<2> start{{-1.0, 0.0}, {1.0, 1.0}};
    ASSERT_NEAR(eval_symbol(kTricomi, start), 0.0, 1e-15);
    const auto tr = flow(kTricomi, start, T, steps);
    const auto c = boundary_contact(tr, T / steps);
    EXPECT_TRUE(c.reached(1e-10));
    EXPECT_NEAR(c.time_at_min, 1.0, 1e-12);
    EXPECT_TRUE(c.xi1_changes_sign);
    // Exact solution x1(t) = -(1 - t)^2, xi1 = 1 - t.
    for (int i = 0; i <= steps; i += 128) {
        const double t = i * T / steps;
        EXPECT_NEAR(tr[i].x[0], -(1 - t) * (1 - t), 1e-12);
    }
}

TEST(Flow, OverflowIsReported) {
    EXPECT_THROW(flow(kKeldysh, PhaseSpacePoint<2>{{0.0, 0.0}, {-1.0, 0.0}}, 2.0, 64), StepOverflow);
}

TEST(FlowProperty, SymbolConservation) {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (const auto& s : {kKeldysh, kTricomi}) {
        for (int i = 0; i < 10; ++i) {
            const PhaseSpacePoint<2> p{{U(rng), U(rng)}, {1.0 + 0.5 * U(rng), U(rng)}};
            const double p0 = eval_symbol(s, p);
            const double T = s.kind == SymbolKind::Keldysh ? 2.0 : 10.0;
            std::vector<PhaseSpacePoint<2>> tr;
            try {
                tr = flow(s, p, T, 4096);
            } catch (const StepOverflow&) {
                continue;
            }
            double scale = 0.0;
            for (const auto& q : tr) scale = std::max(scale, std::abs(q.xi[0] * q.xi[0]) + std::abs(q.xi[1] * q.xi[1]));
            for (const auto& q : tr) EXPECT_NEAR(eval_symbol(s, q), p0, 1e-8 * std::max(std::abs(p0), scale));
        }
    }
}

TEST(CheckRadial, KeldyshIsRadialForMinusP) {
    const auto lam = keldysh_lagrangian(LagrangianSign::Plus, {1, 2, 4, 8});
    const auto r = check_radial(kKeldysh, lam);
    EXPECT_TRUE(r.contained);
    EXPECT_TRUE(r.parallel);
    EXPECT_GT(r.min_dp_norm, 0.0);
    EXPECT_FALSE(r.positivity);
    EXPECT_EQ(r.factor_sign, -1);
    EXPECT_TRUE(r.radial());
    EXPECT_EQ(r.max_factor, -1.0); // factor -xi1
    EXPECT_EQ(r.min_factor, -8.0);
}

TEST(CheckRadial, KeldyshLambdaMinusFlipsSign) {
    const auto r = check_radial(kKeldysh, keldysh_lagrangian(LagrangianSign::Minus, {1, 2, 4, 8}));
    EXPECT_TRUE(r.radial());
    EXPECT_EQ(r.factor_sign, 1);
}

TEST(CheckRadial, TricomiFailsContainment) {
    const auto r = check_radial(kTricomi, keldysh_lagrangian(LagrangianSign::Plus, {1, 2, 4, 8}));
    EXPECT_FALSE(r.contained);
    EXPECT_EQ(r.max_symbol_value, 64.0);
    EXPECT_FALSE(r.radial());
}

TEST(CheckRadial, NormalFormPassesWithUnitFactor) {
    LagrangianSample<1> lam;
    for (int t = 1; t <= 8; ++t) lam.points.push_back({{0.0}, {double(t)}});
    const auto r = check_radial(kNormal1, lam);
    EXPECT_TRUE(r.radial());
    EXPECT_TRUE(r.positivity);
    EXPECT_EQ(r.min_factor, 1.0);
    EXPECT_EQ(r.max_factor, 1.0);
}

TEST(CheckRadial, EmptySampleThrows) {
    EXPECT_THROW(check_radial(kKeldysh, LagrangianSample<2>{}), EmptySample);
}

TEST(Characteristic, AnglesExistOnlyForNonpositiveX1) {
    for (double x1 : {0.1, 1.0, 3.0}) {
        EXPECT_TRUE(characteristic_angles(SymbolKind::Keldysh, x1).empty());
        EXPECT_TRUE(characteristic_angles(SymbolKind::Tricomi, x1).empty());
    }
    for (double x1 : {-0.01, -0.5, -2.0}) {
        for (auto kind : {SymbolKind::Keldysh, SymbolKind::Tricomi}) {
            const auto th = characteristic_angles(kind, x1);
            EXPECT_EQ(th.size(), 4u);
            for (double t : th) {
                const double c = std::cos(t), s = std::sin(t);
                const double p = kind == SymbolKind::Keldysh ? x1 * c * c + s * s : c * c + x1 * s * s;
                EXPECT_NEAR(p, 0.0, 1e-14);
            }
        }
    }
}

TEST(Characteristic, RadialAnglesAtBoundary) {
    const auto k = characteristic_angles(SymbolKind::Keldysh, 0.0);
    ASSERT_EQ(k.size(), 2u);
    EXPECT_EQ(k[0], 0.0);
    EXPECT_NEAR(k[1], M_PI, 1e-15);
    const auto t = characteristic_angles(SymbolKind::Tricomi, 0.0);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_NEAR(t[0], M_PI / 2, 1e-15);
    EXPECT_NEAR(t[1], 1.5 * M_PI, 1e-15);
}

TEST(Characteristic, KeldyshFlowTangentToBoundaryOnLambda) {
    for (double th : {0.0, M_PI}) {
        const auto v = cylinder_field(kKeldysh, 0.0, th);
        EXPECT_EQ(v.dx1_dt, 0.0);
        EXPECT_NEAR(v.dtheta_dt, 0.0, 1e-15);
    }
    const auto v = cylinder_field(kTricomi, 0.0, M_PI / 2);
    EXPECT_NEAR(v.dx1_dt, 0.0, 1e-15);
    EXPECT_NEAR(v.dtheta_dt, 1.0, 1e-15);
}
