#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "splitwell/tracking.hpp"

using namespace splitwell;

namespace {

TwoBodyModel isw() { return {InfiniteSquareWell{1.0}, {0.0, 0.0}, 0.0}; }
TwoBodyModel ho() { return {Harmonic{1.0}, {0.0, 0.0}, 0.0}; }

SweepSpec spec(const TwoBodyModel& m, SweepParameter p, Coupling fixed, bool inf = true) {
    SweepSpec s{p, fixed, {}, inf};
    const double u = natural_units(m.trap).coupling;
    for (double g : {0.0, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0}) s.grid.push_back(g * u);
    return s;
}

double e0(const TwoBodyModel& m) { return natural_units(m.trap).energy; }

const LevelPath& by_name(const SweepResult& r, const std::string& n) {
    for (const auto& p : r.paths)
        if (p.start_name == n) return p;
    throw std::runtime_error("no path " + n);
}

}  // namespace

TEST(Sweep, SquareWellTauPathsFromTwoFiveEightMergeAtEight) {
    const auto m = isw();
    const auto r = sweep(m, spec(m, SweepParameter::Tau, 0.0), 10);
    for (const char* n : {"(00)+", "(01)+", "(01)-", "(11)+"}) EXPECT_NEAR(*by_name(r, n).corner_energy / e0(m), 8.0, 1e-10) << n;
    std::map<long, int> counts;
    for (const auto& e : endpoint_merge_report(r))
        if (e.complete) counts[std::lround(e.corner_energy / e0(m))] = e.count;
    EXPECT_EQ(counts[8], 4);
    EXPECT_EQ(counts[20], 8);
}

TEST(Sweep, CompleteMergesMatchCornerMultiplicity) {
    for (const auto& m : {isw(), ho()}) {
        const auto r = sweep(m, spec(m, SweepParameter::Tau, 0.0), 12);
        for (const auto& e : endpoint_merge_report(r))
            if (e.complete) EXPECT_EQ(e.count, e.multiplicity) << e.corner_energy;
    }
}

TEST(Sweep, GammaPathKeepsParityAndShiftsOneLabel) {
    const auto m = isw();
    const auto r = sweep(m, spec(m, SweepParameter::Gamma, 0.0), 8);
    const auto& p = by_name(r, "(00)+");
    EXPECT_NEAR(*p.corner_energy / e0(m), 5.0, 1e-10);
    EXPECT_EQ(p.end_name, "(01);[2]");
    for (const auto& q : r.paths) {
        if (q.sector.exchange != Exchange::Symmetric || !q.start) continue;
        ASSERT_TRUE(q.end) << q.start_name;
        EXPECT_EQ(q.end->n1, q.start->n1);
        EXPECT_EQ(q.end->n2, q.start->n2 + 1);
        const int parity = (q.end->n1 + q.end->n2) % 2 == 0 ? 1 : -1;
        // the unitary [2] member inherits the antisymmetric partner's parity, flipped
        EXPECT_EQ(sign_of(q.sector.parity), -parity) << q.start_name;
    }
}

TEST(Sweep, AntisymmetricPathsAreConstant) {
    for (const auto& m : {isw(), ho()})
        for (const Coupling tau : {Coupling(0.0), Coupling::infinite()}) {
            const auto r = sweep(m, spec(m, SweepParameter::Gamma, tau), 8);
            for (const auto& p : r.paths)
                if (p.sector.exchange == Exchange::Antisymmetric)
                    for (double e : p.energies) EXPECT_DOUBLE_EQ(e, p.energies.front()) << p.start_name;
        }
}

TEST(Sweep, PathsAreMonotone) {
    for (const auto& m : {isw(), ho()}) {
        for (const auto& s : {spec(m, SweepParameter::Tau, 0.0), spec(m, SweepParameter::Tau, Coupling::infinite()),
                              spec(m, SweepParameter::Gamma, 0.0), spec(m, SweepParameter::Gamma, Coupling::infinite())}) {
            const auto r = sweep(m, s, 8);
            for (const auto& p : r.paths) {
                EXPECT_TRUE(monotone(r, p)) << to_string(s.parameter) << " " << p.start_name;
                for (double e : p.energies) EXPECT_TRUE(std::isfinite(e));
            }
        }
    }
}

TEST(Sweep, OnlyConservedLabelsCross) {
    const auto m = isw();
    const auto c = crossing_report(sweep(m, spec(m, SweepParameter::Tau, 0.0), 12));
    EXPECT_EQ(c.within_conserved, 0);
    EXPECT_GE(c.within_sector, 1);
    EXPECT_NE(std::find(c.pairs.begin(), c.pairs.end(), "(22)+ x (13)+"), c.pairs.end());
}

TEST(Sweep, SortedMatchingAlongEdSweep) {
    TwoBodyModel m{Harmonic{1.0}, {1.0, 0.3}, 0.0};
    SweepSpec s{SweepParameter::Gamma, 1.0, {0.0, 0.5, 1.0, 2.0}, false};
    SweepOptions o;
    o.solve.basis_size = 120;
    const auto r = sweep(m, s, 4, o);
    EXPECT_EQ(r.method, "ed");
    for (const auto& p : r.paths) {
        EXPECT_TRUE(p.key.empty());
        EXPECT_TRUE(monotone(r, p)) << p.start_name;
    }
}

TEST(Sweep, FiniteEndpointGivesEmptyMergeReport) {
    const auto m = isw();
    EXPECT_TRUE(endpoint_merge_report(sweep(m, spec(m, SweepParameter::Tau, 0.0, false), 1)).empty());
}

TEST(Sweep, RejectsBadGrids) {
    const auto m = isw();
    EXPECT_THROW(sweep(m, SweepSpec{SweepParameter::Tau, 0.0, {}, false}, 2), EmptyInput);
    EXPECT_THROW(sweep(m, SweepSpec{SweepParameter::Tau, 0.0, {1.0, 1.0}, false}, 2), DomainError);
    EXPECT_THROW(sweep(m, SweepSpec{SweepParameter::Tau, 0.0, {-1.0}, false}, 2), DomainError);
}

TEST(Adiabatic, TauThenGammaSplitsEvenly) {
    const auto o = adiabatic_map(isw(), "(00)+", {SweepParameter::Tau, SweepParameter::Gamma});
    ASSERT_EQ(o.final.size(), 2u);
    std::map<std::string, double> w;
    for (const auto& a : o.final) w[a.label] = a.amplitude * a.amplitude;
    EXPECT_NEAR(w["(13);[2]+;1"], 0.5, 1e-6);
    EXPECT_NEAR(w["(11);[2]+"], 0.5, 1e-6);
    EXPECT_NEAR(o.norm, 1.0, 1e-10);
}

TEST(Adiabatic, GammaThenTauLandsOnOneEigenstate) {
    const auto o = adiabatic_map(isw(), "(00)+", {SweepParameter::Gamma, SweepParameter::Tau});
    ASSERT_EQ(o.final.size(), 1u);
    EXPECT_EQ(o.final.front().label, "(11);[2]+");
    EXPECT_NEAR(std::abs(o.final.front().amplitude), 1.0, 1e-10);
}

TEST(Adiabatic, EmptyRampIsIdentity) {
    const auto o = adiabatic_map(isw(), "(12)-", {});
    ASSERT_EQ(o.final.size(), 1u);
    EXPECT_EQ(o.final.front().label, "(12)-");
    EXPECT_DOUBLE_EQ(o.final.front().amplitude, 1.0);
}

TEST(Adiabatic, NormIsConservedForLowStates) {
    for (const char* n : {"(00)+", "(01)+", "(01)-", "(11)+", "(02)+", "(12)-"})
        for (const auto& ramps : {std::vector{SweepParameter::Tau, SweepParameter::Gamma}, std::vector{SweepParameter::Gamma, SweepParameter::Tau}})
            EXPECT_NEAR(adiabatic_map(isw(), n, ramps).norm, 1.0, 1e-10) << n;
}

TEST(Adiabatic, WeightsIgnoreRotationsWithinASector) {
    // rotate the two even [2] members of the 8 eps0 quadrant level and re-expand
    const auto m = isw();
    auto corner = m;
    corner.barrier.strength = Coupling::infinite();
    const auto spec = solve_two_body(corner, 4);
    std::vector<TwoBodyMember> even;
    for (const auto& x : spec.levels.front().members)
        if (x.label == SectorLabel{Exchange::Symmetric, Parity::Even}) even.push_back(x);
    ASSERT_EQ(even.size(), 2u);
    const auto o = adiabatic_map(m, "(00)+", {SweepParameter::Tau});
    AdiabaticOptions ao;
    const auto moved = detail::transport(m, detail::corner_spectrum(m, {"(00)+"}, 0.0, ao.solver).levels.front().members.front(),
                                         SweepParameter::Tau, spec, ao.solver);
    const double th = 0.37;
    std::vector<TwoBodyMember> rot = even;
    const auto mix = [&](const TwoBodyMember& a, const TwoBodyMember& b, double ca, double cb) {
        PiecewiseSnippet s;
        for (const auto& t : std::get<PiecewiseSnippet>(a.state->rep).terms) s.terms.push_back({t.region, t.i, t.j, ca * t.coeff});
        for (const auto& t : std::get<PiecewiseSnippet>(b.state->rep).terms) s.terms.push_back({t.region, t.i, t.j, cb * t.coeff});
        TwoBodyMember r = a;
        r.state->rep = s;
        return r;
    };
    rot[0] = mix(even[0], even[1], std::cos(th), std::sin(th));
    rot[1] = mix(even[0], even[1], -std::sin(th), std::cos(th));
    double before = 0, after = 0;
    for (double a : expand(moved, even)) before += a * a;
    for (double a : expand(moved, rot)) after += a * a;
    EXPECT_NEAR(before, 1.0, 1e-10);
    EXPECT_NEAR(after, before, 1e-12);
    ASSERT_EQ(o.final.size(), 2u);
}

TEST(Adiabatic, RejectsNonCornersAndOtherTraps) {
    auto off = isw();
    off.gamma = 1.0;
    EXPECT_THROW(adiabatic_map(off, "(00)+", {SweepParameter::Tau}), WrongLimit);
    EXPECT_THROW(adiabatic_map(ho(), "(00)+", {SweepParameter::Tau}), WrongLimit);
    EXPECT_THROW(adiabatic_map(isw(), "(00)+", {SweepParameter::Tau, SweepParameter::Tau}), WrongLimit);
}
