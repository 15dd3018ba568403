#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <string>

#include "splitwell/symmetry.hpp"
#include "splitwell/twobody.hpp"

using namespace splitwell;

namespace {

struct Golden {
    const char* expr;
    std::uint64_t order;
};

void expect_orders(const std::vector<Golden>& rows) {
    for (const auto& g : rows) {
        const auto o = group_order(g.expr);
        EXPECT_EQ(o.order, g.order) << g.expr;
        EXPECT_FALSE(o.continuous) << g.expr;
    }
}

}  // namespace

// one particle, no tunneling / tunneling
TEST(GroupOrder, OneParticleTable) {
    expect_orders({{"E", 1}, {"O(1)_a", 2}, {"O(1)_a x O(1)_b", 4}, {"W2", 2}, {"W'2", 2}, {"O(1) wr W2", 8}, {"O(1)", 2}});
}

// two particles, impenetrable barrier; columns: none, finite range, contact, unitary
TEST(GroupOrder, TwoParticleImpenetrableTable) {
    expect_orders({
        {"D1 x W2 x D1", 8}, {"O2 x W2 x O2", 8},
        {"D4 x D1 wr W2 x D1", 128}, {"D2 x W2 x D1", 16}, {"D2 x D1 wr W2 x D1", 64}, {"D1 wr O2 x D1 wr W2 x O2", 128},
        {"D4 x D2 wr W2 x D4", 2048}, {"D2 x W2 x D2", 32}, {"D2 x D2 wr W2 x D1", 256},
        {"D1 wr O2 x D2 wr W2 x D1 wr O2", 2048},
        {"D1 wr W4", 384}, {"D1 wr W2 x W2", 16}, {"D1 wr W2 x D1 wr W2", 64}, {"O2 wr W2 x D1 wr W2", 64},
        {"D4 wr W4", 98304}, {"D2 wr W2 x D1 wr W2", 256}, {"D2 wr W2 x D4 wr W2", 4096},
        {"D1 wr O2 wr W2 x D4 wr W2", 16384},
    });
}

TEST(GroupOrder, TwoParticleTunnelingTable) {
    expect_orders({{"P2", 2}, {"D1", 2}, {"O2", 2}, {"O(1) wr P2", 8}, {"D4", 8}, {"O(1) x P2", 4}, {"D2", 4},
                   {"D1 wr O2", 8}});
}

TEST(GroupOrder, WreathBindsTighterThanDirect) {
    const auto g = parse_group("D2 x D1 wr W2 x D1");
    EXPECT_TRUE(g.precedence_applied);
    EXPECT_EQ(g.kind, GroupExpr::Kind::Direct);
    ASSERT_EQ(g.children.size(), 3u);
    EXPECT_EQ(g.children[1].kind, GroupExpr::Kind::Wreath);
    EXPECT_FALSE(parse_group("(D1 wr W2) x D1").precedence_applied);
    EXPECT_FALSE(parse_group("D1 wr W4").precedence_applied);
    EXPECT_EQ(group_order("D2 × D1 ≀ W2 × D1").order, 64u);
}

TEST(GroupOrder, WreathIsAssociative) {
    EXPECT_EQ(group_order("(D1 wr O2) wr W2").order, 128u);
    EXPECT_EQ(group_order("D1 wr (O2 wr W2)").order, 128u);
    EXPECT_EQ(group_order("D1 wr O2 wr W2").order, 128u);
}

TEST(GroupOrder, DirectProductOrderIndependent) {
    for (const char* a : {"D4 x O(1) x W2", "W2 x D4 x O(1)", "O(1) x W2 x D4"}) EXPECT_EQ(group_order(a).order, 32u) << a;
}

TEST(GroupOrder, TimeTranslationIsSymbolic) {
    const auto o = group_order("(T_a x O(1)) wr W2");
    EXPECT_TRUE(o.continuous);
    EXPECT_EQ(o.order, 8u);
    EXPECT_TRUE(group_order("T_a x T_b").continuous);
}

TEST(GroupOrder, Malformed) {
    for (const char* bad : {"", "D", "D0", "Q2", "D1 wr", "(D1 x W2", "D1 wr D2", "W2 x"})
        EXPECT_THROW(group_order(bad), MalformedExpression) << bad;
}

TEST(Prediction, TableOneGolden) {
    struct Cell {
        TauRegime t;
        GammaRegime g;
        bool centred;
        std::set<int> want;
        const char* row;
    };
    const auto F = TauRegime::Finite, I = TauRegime::Infinite;
    const auto Z = GammaRegime::Zero, G = GammaRegime::Finite, U = GammaRegime::Infinite;
    const std::vector<Cell> cells = {
        {F, Z, false, {1, 2}, "H^tau_0"}, {F, Z, true, {1, 2}, "H^tau_0"},
        {F, G, false, {1}, "H^tau_gamma"}, {F, G, true, {1}, "H^tau_gamma"},
        {F, U, false, {2}, "H^tau_inf"}, {F, U, true, {2}, "H^tau_inf"},
        {I, Z, false, {1, 2}, "H^inf_0"}, {I, Z, true, {4, 8}, "H^inf_0"},
        {I, G, false, {1, 2}, "H^inf_gamma"}, {I, G, true, {2, 6}, "H^inf_gamma"},
        {I, U, false, {2}, "H^inf_inf"}, {I, U, true, {2, 8}, "H^inf_inf"},
    };
    for (const auto& c : cells) {
        const auto p = predict_degeneracies(c.t, c.g, c.centred);
        EXPECT_EQ(p.allowed, c.want) << c.row;
        EXPECT_EQ(p.row, c.row);
        EXPECT_EQ(p.col, c.centred ? "a=0" : "a!=0");
    }
}

TEST(Multiplets, TransitiveClustering) {
    const auto m = detect_multiplets(std::vector<double>{1.0, 1.0 + 1e-12, 2.0}, 1e-8);
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m[0].multiplicity, 2);
    EXPECT_NEAR(m[0].energy, 1.0, 1e-11);
    EXPECT_EQ(m[1], (Multiplet{2.0, 1}));
    // chain: each neighbour within tol though the ends are not
    EXPECT_EQ(detect_multiplets(std::vector<double>{1.0, 1.0 + 6e-9, 1.0 + 1.2e-8}, 1e-8).size(), 1u);
    EXPECT_TRUE(detect_multiplets(std::vector<double>{}, 1e-8).empty());
}

TEST(Multiplets, HarmonicShells) {
    const auto m = detect_multiplets(build_separable({Harmonic{1.0}, {0.0, 0.0}, 0.0}, 5), 1e-8);
    std::vector<int> mult;
    for (const auto& x : m) mult.push_back(x.multiplicity);
    EXPECT_EQ(mult, (std::vector<int>{1, 2, 3, 4, 5}));
}

TEST(Audit, HarmonicShellsExceedGenericPrediction) {
    const TwoBodyModel h{Harmonic{1.0}, {0.0, 0.0}, 0.0};
    const auto r = audit(build_separable(h, 5), predict_degeneracies(h), 1e-8);
    ASSERT_EQ(r.entries.size(), 5u);
    EXPECT_EQ(r.entries[0].verdict, Verdict::Systematic);
    EXPECT_EQ(r.entries[1].verdict, Verdict::Systematic);
    for (std::size_t k = 2; k < 5; ++k) EXPECT_EQ(r.entries[k].verdict, Verdict::Accidental) << k;
    EXPECT_EQ(r.systematic + r.accidental + r.split, 5);
}

TEST(Audit, EmptySpectrumGivesEmptyReport) {
    const auto r = audit(std::vector<Multiplet>{}, predict_degeneracies(TauRegime::Finite, GammaRegime::Zero, true), 1e-8);
    EXPECT_TRUE(r.entries.empty());
    EXPECT_EQ(r.systematic + r.accidental + r.split, 0);
}

TEST(Audit, SplitWhenNeighboursFormAnAllowedMultiplet) {
    const auto p = predict_degeneracies(TauRegime::Infinite, GammaRegime::Zero, true);
    const auto r = audit(std::vector<Multiplet>{{1.0, 2}, {1.0 + 1e-7, 2}, {3.0, 3}}, p, 1e-8);
    EXPECT_EQ(r.entries[0].verdict, Verdict::Split);
    EXPECT_EQ(r.entries[1].verdict, Verdict::Split);
    EXPECT_EQ(r.entries[2].verdict, Verdict::Accidental);
}

TEST(Audit, QuadrantOutputIsSystematic) {
    // the oscillator merges shells with equal m1 + m2, so only the box is checked level by level
    for (Coupling g : {Coupling(0.0), Coupling::infinite()}) {
        const TwoBodyModel m{InfiniteSquareWell{1.0}, {Coupling::infinite(), 0.0}, g};
        for (const auto& l : quadrant_construct(m, 5).levels)
            EXPECT_TRUE(l.multiplicity == 2 || l.multiplicity == 4 || l.multiplicity == 8) << l.multiplicity;
    }
    const TwoBodyModel q{Quartic{1.0}, {Coupling::infinite(), 0.0}, 0.0};
    SolverOptions o;
    o.grid_size = 1201;
    const auto r = audit(quadrant_construct(q, 8, o), predict_degeneracies(q), 1e-6);
    EXPECT_EQ(r.systematic, static_cast<int>(r.entries.size()));
}
