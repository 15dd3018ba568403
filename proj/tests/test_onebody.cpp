#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "splitwell/onebody.hpp"

using namespace splitwell;

namespace {

const double kPi = std::numbers::pi;
double eps0(double L) { return kPi * kPi / (2 * L * L); }

double integrate_square(const OneBodySpectrum& s, std::size_t n) {
    double sum = 0;
    for (std::size_t p = 0; p + 1 < s.breakpoints.size(); ++p) {
        const auto q = gauss_legendre(200, s.breakpoints[p], s.breakpoints[p + 1]);
        for (std::size_t i = 0; i < q.nodes.size(); ++i) sum += q.weights[i] * std::pow(s.wavefunctions[n](q.nodes[i]), 2);
    }
    return sum;
}

}  // namespace

TEST(IswSplit, NoBarrierIsBoxSpectrum) {
    const auto s = solve_isw_split(1.0, {0.0, 0.0}, 4);
    ASSERT_EQ(s.levels.size(), 4u);
    for (int n = 0; n < 4; ++n) EXPECT_NEAR(s.levels[n].energy / eps0(1.0), (n + 1) * (n + 1), 1e-12);
    EXPECT_EQ(s.levels[0].parity, Parity::Even);
    EXPECT_EQ(s.levels[1].parity, Parity::Odd);
}

TEST(IswSplit, InfiniteBarrierCentredIsPairwiseDegenerate) {
    const auto s = solve_isw_split(1.0, {Coupling::infinite(), 0.0}, 6);
    const double expect[] = {4, 4, 16, 16, 36, 36};
    ASSERT_EQ(s.levels.size(), 6u);
    for (int n = 0; n < 6; ++n) {
        EXPECT_DOUBLE_EQ(s.levels[n].energy / eps0(1.0), expect[n]);
        EXPECT_NE(s.levels[n].well, Well::None);
        EXPECT_NE(s.levels[n].parity, Parity::None);
    }
    for (int n = 0; n < 6; n += 2) EXPECT_EQ(s.levels[n].energy, s.levels[n + 1].energy);
}

TEST(IswSplit, InfiniteBarrierOffCentreHasWellsNoParity) {
    const auto s = solve_isw_split(1.0, {Coupling::infinite(), 0.2}, 5);
    EXPECT_EQ(s.levels[0].well, Well::Left);  // left well is longer
    for (const auto& l : s.levels) EXPECT_EQ(l.parity, Parity::None);
    EXPECT_NEAR(s.levels[0].energy, 0.5 * std::pow(kPi / 0.7, 2), 1e-12);
}

TEST(IswSplit, OffsetBeyondWallRejected) {
    EXPECT_THROW(solve_isw_split(1.0, {1.0, 0.5}, 3), InvalidGeometry);
}

TEST(IswSplit, FiniteBarrierMatchesGridOracle) {
    // tau = 3 eps0 L, a = 0.2 L; grid chosen so that a and 0 sit on nodes.
    const double L = 1.0, tau = 3 * eps0(L) * L;
    const BarrierSpec b{tau, 0.2 * L};
    const auto exact = solve_isw_split(L, b, 3);
    const auto grid = solve_grid(InfiniteSquareWell{L}, b, 3999, 3, {.richardson = true});
    for (int n = 0; n < 3; ++n) EXPECT_NEAR(grid.levels[n].energy / exact.levels[n].energy, 1.0, 1e-6) << n;
    // Root of the secular function sits inside the first gap.
    EXPECT_GT(exact.levels[0].energy, eps0(L));
    EXPECT_LT(exact.levels[0].energy, 4 * eps0(L));
}

TEST(IswSplit, WavefunctionsNormalised) {
    for (const BarrierSpec b : {BarrierSpec{5.0, 0.0}, BarrierSpec{5.0, 0.13}, BarrierSpec{Coupling::infinite(), 0.1}}) {
        const auto s = solve_isw_split(1.0, b, 6);
        for (std::size_t n = 0; n < s.levels.size(); ++n) EXPECT_NEAR(integrate_square(s, n), 1.0, 1e-10);
    }
}

TEST(IswSplit, InterlacingAndOddInvariance) {
    const auto s0 = solve_isw_split(1.0, {0.0, 0.0}, 8);
    const auto sinf = solve_isw_split(1.0, {Coupling::infinite(), 0.0}, 8);
    for (double tau : {0.3, 2.0, 40.0}) {
        const auto s = solve_isw_split(1.0, {tau, 0.0}, 8);
        for (int n = 0; n < 8; ++n) {
            if (n % 2 == 1) {
                EXPECT_EQ(s.levels[n].energy, s0.levels[n].energy);
            } else {
                EXPECT_GT(s.levels[n].energy, s0.levels[n].energy);
                EXPECT_LT(s.levels[n].energy, sinf.levels[n].energy);
            }
        }
    }
}

TEST(IswSplit, MonotoneInTau) {
    std::vector<double> prev;
    for (double tau : {0.0, 0.5, 3.0, 30.0}) {
        const auto e = solve_isw_split(1.0, {tau, 0.17}, 6).energies();
        if (!prev.empty())
            for (int n = 0; n < 6; ++n) EXPECT_GE(e[n], prev[n]);
        prev = e;
    }
}

TEST(HarmonicSplit, NoBarrier) {
    const auto s = solve_harmonic_split({0.0, 0.0}, 5);
    for (int n = 0; n < 5; ++n) EXPECT_DOUBLE_EQ(s.levels[n].energy, n + 0.5);
}

TEST(HarmonicSplit, InfiniteCentredBarrierDoublesOddLevels) {
    const auto s = solve_harmonic_split({Coupling::infinite(), 0.0}, 6);
    const double expect[] = {1.5, 1.5, 3.5, 3.5, 5.5, 5.5};
    for (int n = 0; n < 6; ++n) EXPECT_DOUBLE_EQ(s.levels[n].energy, expect[n]);
}

TEST(HarmonicSplit, CentredFiniteBarrierMatchesGridOracle) {
    const auto s = solve_harmonic_split({1.0, 0.0}, 4);
    EXPECT_GT(s.levels[0].energy, 0.5);
    EXPECT_LT(s.levels[0].energy, 1.5);
    const auto g = solve_grid(Harmonic{}, {1.0, 0.0}, 4000, 4, {.half_extent = 8.0, .richardson = true});
    for (int n = 0; n < 4; ++n) EXPECT_NEAR(g.levels[n].energy, s.levels[n].energy, 1e-6) << n;
    EXPECT_DOUBLE_EQ(s.levels[1].energy, 1.5);
    EXPECT_DOUBLE_EQ(s.levels[3].energy, 3.5);
}

TEST(HarmonicSplit, GeneralOffsetMatchesGridOracle) {
    const BarrierSpec b{1.0, 0.3};
    const auto s = solve_harmonic_split(b, 6);
    const auto g = solve_grid(Harmonic{}, b, 4799, 6, {.half_extent = 12.0, .richardson = true});
    for (int n = 0; n < 6; ++n) EXPECT_NEAR(g.levels[n].energy, s.levels[n].energy, 1e-6) << n;
}

TEST(HarmonicSplit, InfiniteOffsetBarrierMatchesGridOracle) {
    const BarrierSpec b{Coupling::infinite(), 0.4};
    const auto s = solve_harmonic_split(b, 6);
    const auto g = solve_grid(Harmonic{}, b, 4799, 6, {.half_extent = 12.0, .richardson = true});
    for (int n = 0; n < 6; ++n) {
        EXPECT_NEAR(g.levels[n].energy, s.levels[n].energy, 1e-6) << n;
        EXPECT_EQ(g.levels[n].well, s.levels[n].well) << n;
    }
}

TEST(HarmonicSplit, MonotoneAndInterlacing) {
    std::vector<double> prev;
    for (double tau : {0.0, 0.4, 2.0, 25.0}) {
        const auto e = solve_harmonic_split({tau, 0.0}, 6).energies();
        for (int k = 0; k < 3; ++k) {
            EXPECT_GE(e[2 * k], 2 * k + 0.5);
            EXPECT_LE(e[2 * k], 2 * k + 1.5);
        }
        if (!prev.empty())
            for (int n = 0; n < 6; ++n) EXPECT_GE(e[n], prev[n]);
        prev = e;
    }
}

TEST(GridSolver, HarmonicSpectrumSecondOrder) {
    const auto raw = solve_grid(Harmonic{}, {0.0, 0.0}, 2000, 3, {.half_extent = 8.0});
    const auto rich = solve_grid(Harmonic{}, {0.0, 0.0}, 2000, 3, {.half_extent = 8.0, .richardson = true});
    const double h = 16.0 / 2002;
    for (int n = 0; n < 3; ++n) {
        EXPECT_NEAR(rich.levels[n].energy, n + 0.5, 1e-6);
        // Leading error is h^2 <p^4>/24 with <p^4> = (6n^2 + 6n + 3)/4.
        EXPECT_NEAR(raw.levels[n].energy, n + 0.5, 1.1 * h * h * (6 * n * n + 6 * n + 3) / 96.0);
    }
}

TEST(GridSolver, FlatTabulatedBoxMatchesIsw) {
    Tabulated flat{{-0.5, 0.0, 0.5}, {0.0, 0.0, 0.0}, true};
    const auto g = solve_grid(flat, {0.0, 0.0}, 2001, 4, {.richardson = true});
    const auto s = solve_isw_split(1.0, {0.0, 0.0}, 4);
    for (int n = 0; n < 4; ++n) EXPECT_NEAR(g.levels[n].energy / s.levels[n].energy, 1.0, 1e-9);
}

TEST(GridSolver, QuarticInfiniteBarrierExactPairs) {
    const auto g = solve_grid(Quartic{1.0}, {Coupling::infinite(), 0.0}, 2000, 8);
    for (int n = 0; n < 8; n += 2) {
        EXPECT_LT(std::abs(g.levels[n + 1].energy - g.levels[n].energy), 1e-9 * g.levels[n].energy);
        EXPECT_EQ(g.levels[n].parity, Parity::Even);
        EXPECT_EQ(g.levels[n + 1].parity, Parity::Odd);
    }
}

TEST(GridSolver, GroundStateConvergesAtSecondOrder) {
    const auto e = [](int n) { return solve_grid(Quartic{1.0}, {0.0, 0.0}, n, 1).levels[0].energy; };
    const double e1 = e(501), e2 = e(1003), e3 = e(2007);
    EXPECT_NEAR(std::log2((e1 - e2) / (e2 - e3)), 2.0, 0.2);
}

TEST(GridSolver, ParityLabelsAtCentre) {
    const auto g = solve_grid(Quartic{1.0}, {2.0, 0.0}, 1501, 4);
    EXPECT_EQ(g.levels[0].parity, Parity::Even);
    EXPECT_EQ(g.levels[1].parity, Parity::Odd);
    const auto off = solve_grid(Quartic{1.0}, {2.0, 0.3}, 1501, 4);
    for (const auto& l : off.levels) EXPECT_EQ(l.parity, Parity::None);
}

TEST(GridSolver, TooSmallBoxDetected) {
    EXPECT_THROW(solve_grid(Harmonic{}, {0.0, 0.0}, 801, 4, {.half_extent = 2.0}), GridTooSmall);
}

TEST(ClassifyCase, TableRows) {
    const auto vi = classify_case({WellRelation::Identical, true, true, true});
    EXPECT_EQ(vi.roman, "VI");
    EXPECT_EQ(group_order(vi.no_tunneling).order, 8u);
    EXPECT_EQ(group_order(vi.tunneling).order, 2u);

    const auto i = classify_case({WellRelation::Different, false, false, false});
    EXPECT_EQ(i.roman, "I");
    EXPECT_EQ(group_order(i.no_tunneling).order, 1u);
    EXPECT_EQ(group_order(i.tunneling).order, 1u);

    const auto v = classify_case({WellRelation::Mirror, false, false, true});
    EXPECT_EQ(v.roman, "V");
    EXPECT_EQ(group_order(v.no_tunneling).order, 2u);
    EXPECT_EQ(group_order(v.tunneling).order, 2u);

    EXPECT_EQ(classify_case({WellRelation::Different, true, false, false}).roman, "II");
    EXPECT_EQ(group_order(classify_case({WellRelation::Different, true, true, false}).no_tunneling).order, 4u);
    EXPECT_EQ(classify_case({WellRelation::Identical, false, false, false}).roman, "IV");
}

TEST(ClassifyCase, InconsistentFlags) {
    EXPECT_THROW(classify_case({WellRelation::Different, false, false, true}), InconsistentFlags);
    EXPECT_THROW(classify_case({WellRelation::Mirror, false, false, false}), InconsistentFlags);
    EXPECT_THROW(classify_case({WellRelation::Identical, true, false, false}), InconsistentFlags);
}
