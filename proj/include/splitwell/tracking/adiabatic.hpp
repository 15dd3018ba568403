#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "splitwell/tracking/sweep.hpp"
#include "splitwell/twobody/states.hpp"

namespace splitwell {

struct Amplitude {
    std::string label;  // destination corner member
    SectorLabel sector;
    double energy = 0.0;
    double amplitude = 0.0;
};

struct AdiabaticOutcome {
    std::string initial;
    std::vector<SweepParameter> ramps;
    TwoBodyModel corner;  // the model at the final corner
    std::vector<Amplitude> final;
    double norm = 0.0;    // sum of squared amplitudes
};

struct AdiabaticOptions {
    SolverOptions solver;
    std::vector<double> grid{0.0, 0.25, 1.0, 4.0, 16.0};  // natural units, confirms each destination level
    double weight_tol = 1e-10;
    int points = 0;  // quadrature points per panel; 0 picks a default
};

namespace detail {

struct Component {
    TwoBodyMember member;
    double amplitude = 0.0;
};

inline int level_of(const TwoBodySpectrum& s, const std::string& name) {
    for (std::size_t l = 0; l < s.levels.size(); ++l)
        for (const auto& m : s.levels[l].members)
            if (m.name == name) return static_cast<int>(l);
    return -1;
}

// The constructive corner spectrum, grown until it holds every named member and energy.
inline TwoBodySpectrum corner_spectrum(const TwoBodyModel& m, const std::vector<std::string>& names, double energy, const SolverOptions& so) {
    SolveOptions o;
    o.ed.solver = so;
    for (int n = 8;; n *= 2) {
        TwoBodySpectrum s = solve_two_body(m, n, o);
        const bool found = std::all_of(names.begin(), names.end(), [&](const std::string& x) { return level_of(s, x) >= 0; });
        if (found && s.levels.back().energy > energy * (1 + 1e-6)) return s;
        if (n > 1024) throw AttachmentFailure("adiabatic_map: corner member not found in the constructive spectrum");
    }
}

inline int max_orbital(const EigenState& s) {
    int k = 0;
    if (const auto* b = std::get_if<BasisCoefficients>(&s.rep))
        for (const auto& t : b->terms) k = std::max({k, t.i, t.j});
    if (const auto* p = std::get_if<PiecewiseSnippet>(&s.rep))
        for (const auto& t : p->terms) k = std::max({k, t.i, t.j});
    return k;
}

// Orbitals of the trap at barrier strength tau (a = 0), with the unsplit trap as wells.
inline std::shared_ptr<const OrbitalContext> orbitals_at(const TwoBodyModel& m, const Coupling& tau, int highest, const SolverOptions& so) {
    auto orb = std::make_shared<const OneBodySpectrum>(one_body(m.trap, {tau, 0.0}, highest + 2, so));
    auto wells = std::make_shared<const OneBodySpectrum>(one_body(m.trap, {0.0, 0.0}, 2 * highest + 4, so));
    return make_context(m.trap, orb, wells, 0.0, "transport");
}

inline PiecewiseSnippet girardeau_snippet(int i, int j, Exchange x) {
    const double r = 1.0 / std::numbers::sqrt2;
    return {{{Region::I, i, j, r}, {Region::II, i, j, x == Exchange::Symmetric ? r : -r}}, Composition(i, j)};
}

// Moves one corner member across a ramp. The result is a function at the
// destination corner; adiabatic continuation fixes it exactly in the square well.
inline EigenState transport(const TwoBodyModel& from, const TwoBodyMember& c, SweepParameter ramp, const TwoBodySpectrum& dest,
                            const SolverOptions& so) {
    if (!c.state) throw UnsupportedFormat("adiabatic_map: corner member " + c.name + " has no state");
    EigenState s = *c.state;
    const bool tau0 = from.barrier.strength.is_zero();
    if (ramp == SweepParameter::Tau) {
        // tau alone never moves the orbital labels; the orbitals themselves deform
        s.ctx = orbitals_at(from, Coupling::infinite(), max_orbital(s), so);
        return s;
    }
    if (tau0) {
        if (c.label.exchange == Exchange::Antisymmetric) return s;
        if (!c.composition) throw UnsupportedFormat("adiabatic_map: member without composition");
        const int i = c.composition->n1, j = c.composition->n2 + 1;
        s.rep = girardeau_snippet(i, j, Exchange::Symmetric);
        s.ctx = orbitals_at(from, 0.0, j, so);
        return s;
    }
    // tau = inf: a same-well [2] pair (m1, m2) contracts to (m1, m2 + 1) in its half box
    if (c.wells == "same" && c.label.exchange == Exchange::Symmetric) {
        const int m1 = (c.composition->n1 - 1) / 2, m2 = (c.composition->n2 - 1) / 2;
        const std::string name = Composition(2 * m1 + 1, 2 * m2 + 3).str() + (c.label.parity == Parity::Even ? ";[2]+;1" : ";[2]-;1");
        const int l = level_of(dest, name);
        if (l < 0) throw AttachmentFailure("adiabatic_map: destination " + name + " missing");
        for (const auto& m : dest.levels[static_cast<std::size_t>(l)].members)
            if (m.name == name) return *m.state;
    }
    return s;
}

inline void require_corner(const TwoBodyModel& m) {
    const auto corner = [](const Coupling& c) { return c.is_zero() || c.is_infinite(); };
    if (!std::holds_alternative<InfiniteSquareWell>(m.trap))
        throw WrongLimit("adiabatic_map: transport rules are exact only in the square well");
    if (!m.symmetric() || !corner(m.barrier.strength) || !corner(m.gamma))
        throw WrongLimit("adiabatic_map: initial state must sit at a corner with a centred barrier");
}

}  // namespace detail

// Overlaps of a state with a set of members; their squares sum to the captured weight.
inline std::vector<double> expand(const EigenState& s, const std::vector<TwoBodyMember>& basis, int points = 0) {
    std::vector<double> a;
    a.reserve(basis.size());
    for (const auto& b : basis) {
        if (!b.state) throw UnsupportedFormat("expand: basis member " + b.name + " has no state");
        a.push_back(inner_numeric(*b.state, s, points));
    }
    return a;
}

// Ramps the named corner member to inf, one parameter at a time, and expands
// the result in the constructive basis of the final corner.
inline AdiabaticOutcome adiabatic_map(const TwoBodyModel& start, const std::string& initial, const std::vector<SweepParameter>& ramps,
                                      const AdiabaticOptions& o = {}) {
    detail::require_corner(start);
    TwoBodyModel here = start;
    TwoBodySpectrum spec = detail::corner_spectrum(here, {initial}, 0.0, o.solver);
    const int l0 = detail::level_of(spec, initial);
    std::vector<detail::Component> comps;
    for (const auto& m : spec.levels[static_cast<std::size_t>(l0)].members)
        if (m.name == initial) comps.push_back({m, 1.0});

    const double unit = natural_units(start.trap).coupling;
    for (const SweepParameter ramp : ramps) {
        const Coupling& moving = ramp == SweepParameter::Tau ? here.barrier.strength : here.gamma;
        if (!moving.is_zero()) throw WrongLimit("adiabatic_map: ramp " + to_string(ramp) + " starts away from zero");
        TwoBodyModel next = here;
        (ramp == SweepParameter::Tau ? next.barrier.strength : next.gamma) = Coupling::infinite();

        // the sweep from this corner names the destination level of every component
        int top = 0;
        for (const auto& c : comps) top = std::max(top, detail::level_of(spec, c.member.name));
        SweepSpec sw{ramp, ramp == SweepParameter::Tau ? here.gamma : here.barrier.strength, {}, true};
        for (double g : o.grid) sw.grid.push_back(g * unit);
        SweepOptions so;
        so.solve.ed.solver = o.solver;
        const SweepResult path = sweep(here, sw, top + 4, so);
        std::map<std::string, double> dest_energy;
        double e_top = 0;
        for (const auto& p : path.paths) {
            dest_energy[p.start_name] = *p.corner_energy;
            e_top = std::max(e_top, *p.corner_energy);
        }
        std::vector<std::string> none;
        TwoBodySpectrum dest = detail::corner_spectrum(next, none, e_top, o.solver);

        std::map<std::string, detail::Component> out;
        for (const auto& c : comps) {
            const auto it = dest_energy.find(c.member.name);
            if (it == dest_energy.end()) throw AttachmentFailure("adiabatic_map: no path from " + c.member.name);
            const EigenState moved = detail::transport(here, c.member, ramp, dest, o.solver);
            const TwoBodyLevel* level = nullptr;
            for (const auto& lv : dest.levels)
                if (detail::same_multiplet(lv.energy, it->second, 1e-9)) level = &lv;
            if (!level) throw AttachmentFailure("adiabatic_map: attached level of " + c.member.name + " absent at the corner");
            const auto a = expand(moved, level->members, o.points);
            double w = 0;
            for (double x : a) w += x * x;
            if (std::abs(w - 1.0) > o.weight_tol)
                throw AttachmentFailure("adiabatic_map: " + c.member.name + " keeps only weight " + std::to_string(w) +
                                        " in its attached level");
            for (std::size_t k = 0; k < a.size(); ++k) {
                const auto& m = level->members[k];
                auto [pos, fresh] = out.try_emplace(m.name, detail::Component{m, 0.0});
                pos->second.amplitude += c.amplitude * a[k];
            }
        }
        comps.clear();
        for (auto& [name, c] : out)
            if (std::abs(c.amplitude) > 1e-12) comps.push_back(std::move(c));
        here = next;
        spec = std::move(dest);
    }

    AdiabaticOutcome r{initial, ramps, here, {}, 0.0};
    for (const auto& c : comps) {
        r.final.push_back({c.member.name, c.member.label, c.member.energy, c.amplitude});
        r.norm += c.amplitude * c.amplitude;
    }
    std::sort(r.final.begin(), r.final.end(), [](const Amplitude& a, const Amplitude& b) { return a.energy < b.energy || (a.energy == b.energy && a.label < b.label); });
    return r;
}

}  // namespace splitwell
