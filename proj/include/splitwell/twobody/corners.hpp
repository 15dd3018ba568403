#pragma once

#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "splitwell/twobody/states.hpp"

namespace splitwell {

struct SolverOptions {
    int grid_size = 2001;   // one-body grid when no closed form exists
    GridOptions grid;
    double multiplet_tol = 0.0;  // 0 picks 1e-8 (closed form) or 1e-6 (grid, ED)
};

namespace detail {

inline double default_tol(const OneBodySpectrum& s, const SolverOptions& o) {
    if (o.multiplet_tol > 0) return o.multiplet_tol;
    return s.kind == WaveKind::Grid || s.kind == WaveKind::None ? 1e-6 : 1e-8;
}

inline OneBodySpectrum one_body(const TrapPotential& trap, const BarrierSpec& barrier, int count,
                                const SolverOptions& o) {
    if (const auto* isw = std::get_if<InfiniteSquareWell>(&trap)) return solve_isw_split(isw->length, barrier, count);
    if (const auto* h = std::get_if<Harmonic>(&trap)) return solve_harmonic_split(barrier, count, h->omega);
    return solve_grid(trap, barrier, o.grid_size, count, o.grid);
}

inline Domain2D domain_for(const TrapPotential& trap, const OneBodySpectrum& s, double offset) {
    Domain2D d;
    if (const auto* isw = std::get_if<InfiniteSquareWell>(&trap)) {
        d.lo = -0.5 * isw->length;
        d.hi = 0.5 * isw->length;
    } else if (const auto* h = std::get_if<Harmonic>(&trap)) {
        const double X = (std::sqrt(2.0 * static_cast<double>(s.levels.size()) + 1.0) + 9.0) / std::sqrt(h->omega);
        d.lo = -X;
        d.hi = X;
    } else if (s.grid) {
        d.lo = s.grid->x.front();
        d.hi = s.grid->x.back();
    }
    d.cuts = {0.0};
    if (offset != 0.0) d.cuts.push_back(offset);
    std::sort(d.cuts.begin(), d.cuts.end());
    return d;
}

inline std::shared_ptr<const OrbitalContext> make_context(const TrapPotential& trap, std::shared_ptr<const OneBodySpectrum> orb,
                                                          std::shared_ptr<const OneBodySpectrum> wells, double offset,
                                                          std::string id) {
    auto c = std::make_shared<OrbitalContext>();
    c->domain = domain_for(trap, *orb, offset);
    c->orbitals = std::move(orb);
    c->wells = std::move(wells);
    c->id = std::move(id);
    return c;
}

inline Parity pair_parity(const OneBodySpectrum& s, int i, int j, bool symmetric) {
    if (!symmetric) return Parity::None;
    const Parity a = s.levels[static_cast<std::size_t>(i)].parity, b = s.levels[static_cast<std::size_t>(j)].parity;
    if (a == Parity::None || b == Parity::None) throw NotSymmetryEigenstate("centred barrier but orbital parity undetermined");
    return sign_of(a) * sign_of(b) > 0 ? Parity::Even : Parity::Odd;
}

inline std::string pair_name(int i, int j, const char* tail) {
    return "(" + std::to_string(i) + std::to_string(j) + ")" + tail;
}

inline Parity flip(Parity p) { return p == Parity::Even ? Parity::Odd : p == Parity::Odd ? Parity::Even : p; }

}  // namespace detail

// ---------------------------------------------------------------------------
// gamma = 0: symmetrised products of one-body eigenstates, sumset energies.

inline TwoBodySpectrum build_separable(const TwoBodyModel& model, int n_max, const SolverOptions& opts = {}) {
    detail::check_count(n_max);
    if (!model.gamma.is_zero()) throw WrongLimit("build_separable needs gamma = 0");
    for (int M = n_max + 3;; M *= 2) {
        auto one = std::make_shared<const OneBodySpectrum>(detail::one_body(model.trap, model.barrier, M + 1, opts));
        const double tol = detail::default_tol(*one, opts);
        const auto ctx = detail::make_context(model.trap, one, one, model.barrier.offset, "separable");
        std::vector<TwoBodyMember> members;
        for (int i = 0; i < M; ++i) {
            for (int j = i; j < M; ++j) {
                const double e = one->levels[static_cast<std::size_t>(i)].energy + one->levels[static_cast<std::size_t>(j)].energy;
                const Parity p = detail::pair_parity(*one, i, j, model.symmetric());
                for (int x : {1, -1}) {
                    if (x < 0 && i == j) continue;
                    const SectorLabel lab{x > 0 ? Exchange::Symmetric : Exchange::Antisymmetric, p};
                    TwoBodyMember m;
                    m.energy = e;
                    m.label = lab;
                    m.composition = Composition(i, j);
                    m.name = detail::pair_name(i, j, x > 0 ? "+" : "-");
                    m.key = "sep" + m.name;
                    m.state = EigenState{BasisCoefficients{"separable", {{i, j, x}}, {1.0}}, lab, e, ctx};
                    members.push_back(std::move(m));
                }
            }
        }
        const double edge = one->levels[0].energy + one->levels[static_cast<std::size_t>(M)].energy;
        auto levels = detail::complete_levels(std::move(members), edge, tol, n_max);
        if (static_cast<int>(levels.size()) >= n_max || M > 4096) {
            if (static_cast<int>(levels.size()) < n_max) throw NoConvergence("separable spectrum: too few complete levels");
            return {std::move(levels), "separable", tol, std::nullopt};
        }
    }
}

// ---------------------------------------------------------------------------
// gamma = inf from the antisymmetric members of a separable spectrum.

inline TwoBodySpectrum girardeau_map(const TwoBodySpectrum& separable) {
    std::vector<TwoBodyMember> out;
    for (const auto& lvl : separable.levels) {
        for (const auto& m : lvl.members) {
            if (m.label.exchange != Exchange::Antisymmetric) continue;
            if (!m.composition) throw EmptyInput("girardeau_map: antisymmetric member without composition");
            const int i = m.composition->n1, j = m.composition->n2;
            const double r = 1.0 / std::numbers::sqrt2;
            for (Exchange x : {Exchange::Symmetric, Exchange::Antisymmetric}) {
                const bool sym = x == Exchange::Symmetric;
                TwoBodyMember g;
                g.energy = m.energy;
                g.label = {x, sym ? detail::flip(m.label.parity) : m.label.parity};
                g.composition = m.composition;
                g.name = detail::pair_name(i, j, sym ? ";[2]" : ";[1^2]");
                g.key = "gir" + g.name;
                if (m.state) {
                    PiecewiseSnippet snip{{{Region::I, i, j, r}, {Region::II, i, j, sym ? r : -r}}, *m.composition};
                    g.state = EigenState{snip, g.label, g.energy, m.state->ctx};
                }
                out.push_back(std::move(g));
            }
        }
    }
    if (out.empty()) throw EmptyInput("girardeau_map: no antisymmetric levels below the cutoff");
    return {detail::group_levels(std::move(out), separable.multiplet_tol), "girardeau", separable.multiplet_tol,
            std::nullopt};
}

// Lowest n_max levels of the unitary limit at any tau.
inline TwoBodySpectrum solve_unitary(const TwoBodyModel& model, int n_max, const SolverOptions& opts = {}) {
    detail::check_count(n_max);
    TwoBodyModel free = model;
    free.gamma = 0.0;
    for (int count = n_max + 2;; count *= 2) {
        TwoBodySpectrum g = girardeau_map(build_separable(free, count, opts));
        if (static_cast<int>(g.levels.size()) > n_max) {
            g.levels.resize(static_cast<std::size_t>(n_max));
            return g;
        }
    }
}

// ---------------------------------------------------------------------------
// tau = inf, a = 0: snippet kets on quadrants (gamma = 0) or on the six regions
// AI, AII, B, CI, CII, D (gamma = inf), from the unsplit trap's odd states.

namespace detail {

struct QuadrantMember {
    const char* tail;
    Exchange x;
    Parity p;
    const char* wells;
    std::vector<KetTerm> terms;
};

// (s; R) = [R(m1,m2) + s R(m2,m1)] / sqrt2
inline std::vector<KetTerm> pair_ket(Region r, int m1, int m2, double s, double c) {
    const double h = c / std::numbers::sqrt2;
    return {{r, m1, m2, h}, {r, m2, m1, s * h}};
}

inline std::vector<KetTerm> join(std::vector<KetTerm> a, const std::vector<KetTerm>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline std::vector<QuadrantMember> quadrant_members(int m1, int m2, bool unitary) {
    using enum Region;
    const double r = 1.0 / std::numbers::sqrt2;
    const auto S = Exchange::Symmetric, X = Exchange::Antisymmetric;
    const auto E = Parity::Even, O = Parity::Odd;
    std::vector<QuadrantMember> v;
    if (m1 == m2) {
        const int m = m1;
        if (!unitary) {
            v.push_back({";[2]+;1", S, E, "same", {{A, m, m, r}, {C, m, m, r}}});
            v.push_back({";[2]+;2", S, E, "split", {{B, m, m, r}, {D, m, m, r}}});
            v.push_back({";[2]-", S, O, "same", {{A, m, m, r}, {C, m, m, -r}}});
            v.push_back({";[1^2]-", X, O, "split", {{B, m, m, r}, {D, m, m, -r}}});
        } else {
            v.push_back({";[2]+", S, E, "split", {{B, m, m, r}, {D, m, m, r}}});
            v.push_back({";[1^2]-", X, O, "split", {{B, m, m, r}, {D, m, m, -r}}});
        }
        return v;
    }
    const auto sq = [&](Region a, double sa, Region b, double sb, double sgn) {
        return join(pair_ket(a, m1, m2, sa, r), pair_ket(b, m1, m2, sb, sgn * r));
    };
    if (!unitary) {
        v.push_back({";[2]+;1", S, E, "same", sq(A, 1, C, 1, 1)});
        v.push_back({";[2]-;1", S, O, "same", sq(A, 1, C, 1, -1)});
        v.push_back({";[1^2]+;1", X, E, "same", sq(A, -1, C, -1, 1)});
        v.push_back({";[1^2]-;1", X, O, "same", sq(A, -1, C, -1, -1)});
    } else {
        const double h = 0.5;
        v.push_back({";[2]+;1", S, E, "same", {{AI, m1, m2, h}, {AII, m1, m2, h}, {CI, m1, m2, h}, {CII, m1, m2, h}}});
        v.push_back({";[2]-;1", S, O, "same", {{AI, m1, m2, h}, {AII, m1, m2, h}, {CI, m1, m2, -h}, {CII, m1, m2, -h}}});
        v.push_back({";[1^2]+;1", X, E, "same", {{AI, m1, m2, h}, {AII, m1, m2, -h}, {CI, m1, m2, -h}, {CII, m1, m2, h}}});
        v.push_back({";[1^2]-;1", X, O, "same", {{AI, m1, m2, h}, {AII, m1, m2, -h}, {CI, m1, m2, h}, {CII, m1, m2, -h}}});
    }
    v.push_back({";[2]+;2", S, E, "split", sq(B, 1, D, 1, 1)});
    v.push_back({";[2]-;2", S, O, "split", sq(B, -1, D, -1, -1)});
    v.push_back({";[1^2]+;2", X, E, "split", sq(B, -1, D, -1, 1)});
    v.push_back({";[1^2]-;2", X, O, "split", sq(B, 1, D, 1, -1)});
    return v;
}

inline void require_quadrant_corner(const TwoBodyModel& model) {
    if (!model.barrier.strength.is_infinite() || !model.symmetric())
        throw WrongLimit("quadrant construction needs tau = inf and a = 0");
    if (!(model.gamma.is_zero() || model.gamma.is_infinite()))
        throw WrongLimit("quadrant construction needs gamma = 0 or gamma = inf");
}

}  // namespace detail

inline TwoBodySpectrum quadrant_construct(const TwoBodyModel& model, int n_max, const SolverOptions& opts = {}) {
    detail::check_count(n_max);
    detail::require_quadrant_corner(model);
    const bool unitary = model.gamma.is_infinite();
    for (int wells = n_max + 2;; wells *= 2) {
        // odd states n = 2m + 1 for m < wells, plus one more to bound the edge
        auto base = std::make_shared<const OneBodySpectrum>(detail::one_body(model.trap, {0.0, 0.0}, 2 * wells + 3, opts));
        const double tol = detail::default_tol(*base, opts);
        const auto ctx = detail::make_context(model.trap, base, base, 0.0, unitary ? "six-region" : "quadrant");
        const auto eps = [&](int m) { return base->levels[static_cast<std::size_t>(2 * m + 1)].energy; };
        std::vector<TwoBodyMember> members;
        for (int m1 = 0; m1 < wells; ++m1) {
            for (int m2 = m1; m2 < wells; ++m2) {
                const Composition comp(2 * m1 + 1, 2 * m2 + 1);
                for (auto& q : detail::quadrant_members(m1, m2, unitary)) {
                    TwoBodyMember t;
                    t.energy = eps(m1) + eps(m2);
                    t.label = {q.x, q.p};
                    t.composition = comp;
                    t.name = comp.str() + q.tail;
                    t.key = (unitary ? "six" : "quad") + t.name;
                    t.wells = q.wells;
                    t.state = EigenState{PiecewiseSnippet{std::move(q.terms), comp}, t.label, t.energy, ctx};
                    members.push_back(std::move(t));
                }
            }
        }
        auto levels = detail::complete_levels(std::move(members), eps(0) + eps(wells), tol, n_max);
        if (static_cast<int>(levels.size()) >= n_max)
            return {std::move(levels), unitary ? "six-region" : "quadrant", tol, std::nullopt};
        if (wells > 1024) throw NoConvergence("quadrant construction: too few complete levels");
    }
}

}  // namespace splitwell
