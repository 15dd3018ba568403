#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "splitwell/twobody.hpp"

namespace splitwell {

enum class SweepParameter { Tau, Gamma };

inline std::string to_string(SweepParameter p) { return p == SweepParameter::Tau ? "tau" : "gamma"; }

struct SweepSpec {
    SweepParameter parameter = SweepParameter::Tau;
    Coupling fixed;                 // value of the other parameter, possibly inf
    std::vector<double> grid;       // ascending, finite, natural units of the model
    bool terminal_infinity = false; // attach the structural inf corner after the grid
};

struct LevelPath {
    SectorLabel sector;
    int index = 0;                       // rank of the start energy within its sector
    std::string key;                     // conserved label when the solver provides one
    std::string start_name;
    std::optional<Composition> start;
    std::vector<double> energies;        // aligned to SweepSpec::grid
    std::optional<double> asymptote;     // Richardson estimate from the asymptotic points
    std::optional<int> corner_level;     // index into SweepResult::corner levels
    std::optional<double> corner_energy;
    std::string end_name;                // set when the corner level holds one member of the path's sector
    std::optional<Composition> end;
};

struct SweepResult {
    SweepSpec spec;
    TwoBodyModel base;
    std::string method;
    std::vector<LevelPath> paths;
    std::optional<TwoBodySpectrum> corner;  // constructive spectrum at the inf endpoint
};

struct SweepOptions {
    SolveOptions solve;
    double match_tol = 1e-9;        // relative gap below which sorted matching is ambiguous
    double attach_tol = 1e-4;       // relative corner match
    double asymptotic = 1e3;        // in natural coupling units; also uses twice this value
};

namespace detail {

inline TwoBodyModel at(const TwoBodyModel& base, const SweepSpec& s, const Coupling& p) {
    TwoBodyModel m = base;
    if (s.parameter == SweepParameter::Tau) {
        m.barrier.strength = p;
        m.gamma = s.fixed;
    } else {
        m.barrier.strength = s.fixed;
        m.gamma = p;
    }
    return m;
}

inline std::pair<int, int> sector_key(const SectorLabel& l) { return {static_cast<int>(l.exchange), static_cast<int>(l.parity)}; }

// One solver family along the whole grid, chosen at an interior point.
inline Method family(const TwoBodyModel& base, const SweepSpec& s, const SolveOptions& o) {
    if (o.method != Method::Auto) return o.method;
    return choose_method(at(base, s, Coupling(1.0)));
}

inline bool keyed(const TwoBodySpectrum& s) {
    for (const auto& m : s.members())
        if (m.key.empty()) return false;
    return true;
}

// Members of a solve, grouped by sector and sorted by energy.
using SectorLists = std::map<std::pair<int, int>, std::vector<TwoBodyMember>>;

inline SectorLists by_sector(const TwoBodySpectrum& s) {
    SectorLists out;
    for (const auto& m : s.members()) out[sector_key(m.label)].push_back(m);
    for (auto& [k, v] : out)
        std::stable_sort(v.begin(), v.end(), [](const TwoBodyMember& a, const TwoBodyMember& b) { return a.energy < b.energy; });
    return out;
}

struct Tracker {
    const TwoBodyModel& base;
    const SweepSpec& spec;
    SolveOptions solve;
    double match_tol;

    // Energies of every path at parameter p, by key or by sorted order per sector.
    std::vector<double> step(const std::vector<LevelPath>& paths, const Coupling& p, int n_start,
                             const std::vector<double>* previous) const {
        const TwoBodyModel m = at(base, spec, p);
        for (int n = n_start;; n *= 2) {
            const TwoBodySpectrum s = solve_two_body(m, n, solve);
            std::vector<double> e(paths.size(), 0.0);
            bool ok = true;
            if (!paths.empty() && !paths.front().key.empty()) {
                std::map<std::string, double> k;
                for (const auto& x : s.members()) k[x.key] = x.energy;
                for (std::size_t i = 0; i < paths.size() && ok; ++i) {
                    const auto it = k.find(paths[i].key);
                    if (it == k.end()) ok = false;
                    else e[i] = it->second;
                }
            } else {
                const SectorLists lists = by_sector(s);
                for (std::size_t i = 0; i < paths.size() && ok; ++i) {
                    const auto it = lists.find(sector_key(paths[i].sector));
                    // the top member of a sector may be cut by the completeness edge, so keep one spare
                    if (it == lists.end() || static_cast<int>(it->second.size()) <= paths[i].index + 1) ok = false;
                    else e[i] = it->second[static_cast<std::size_t>(paths[i].index)].energy;
                }
                if (ok && previous) check_ambiguity(paths, e, *previous);
            }
            if (ok) return e;
            if (n > 4096) throw CrossingDetected("sweep: a tracked level left the solved window");
        }
    }

    // Sorted matching is ambiguous when two neighbours in a sector touch here but were apart before.
    void check_ambiguity(const std::vector<LevelPath>& paths, const std::vector<double>& e, const std::vector<double>& prev) const {
        for (std::size_t i = 0; i < paths.size(); ++i)
            for (std::size_t j = i + 1; j < paths.size(); ++j) {
                if (!(paths[i].sector == paths[j].sector) || std::abs(paths[i].index - paths[j].index) != 1) continue;
                const bool touch = same_multiplet(e[i], e[j], match_tol);
                const bool apart = !same_multiplet(prev[i], prev[j], match_tol);
                if (touch && apart)
                    throw CrossingDetected("sweep: levels " + std::to_string(paths[i].index) + " and " + std::to_string(paths[j].index) +
                                           " of sector " + to_string(paths[i].sector) + " meet; refine the grid");
            }
    }
};

}  // namespace detail

// Continues the lowest n_max levels at grid[0] across the grid; with
// terminal_infinity, attaches each path to the constructive corner spectrum.
inline SweepResult sweep(const TwoBodyModel& base, const SweepSpec& spec, int n_max, const SweepOptions& o = {}) {
    detail::check_count(n_max);
    if (spec.grid.empty()) throw EmptyInput("sweep: empty grid");
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        if (!std::isfinite(spec.grid[i]) || spec.grid[i] < 0) throw DomainError("sweep: grid values must be finite and >= 0");
        if (i && !(spec.grid[i] > spec.grid[i - 1])) throw DomainError("sweep: grid must be strictly ascending");
    }
    SweepResult r{spec, base, {}, {}, std::nullopt};
    SolveOptions so = o.solve;
    so.method = detail::family(base, spec, o.solve);
    r.method = to_string(so.method);
    const detail::Tracker tr{base, spec, so, o.match_tol};

    const TwoBodySpectrum start = solve_two_body(detail::at(base, spec, spec.grid[0]), n_max, so);
    const bool keyed = detail::keyed(start);
    std::map<std::pair<int, int>, int> rank;
    for (const auto& lvl : start.levels)
        for (const auto& m : lvl.members) {
            LevelPath p;
            p.sector = m.label;
            p.index = rank[detail::sector_key(m.label)]++;
            if (keyed) p.key = m.key;
            p.start_name = m.name;
            p.start = m.composition;
            p.energies.push_back(m.energy);
            r.paths.push_back(std::move(p));
        }
    // sorted matching needs the sectors ranked over the whole start spectrum
    if (!keyed) {
        const auto lists = detail::by_sector(start);
        for (auto& p : r.paths) {
            const auto& v = lists.at(detail::sector_key(p.sector));
            for (std::size_t k = 0; k < v.size(); ++k)
                if (v[k].name == p.start_name) p.index = static_cast<int>(k);
        }
    }

    const int window = std::max(n_max + 4, 2 * n_max);
    std::vector<double> prev;
    for (const auto& p : r.paths) prev.push_back(p.energies.front());
    for (std::size_t g = 1; g < spec.grid.size(); ++g) {
        const auto e = tr.step(r.paths, spec.grid[g], window, &prev);
        for (std::size_t i = 0; i < e.size(); ++i) r.paths[i].energies.push_back(e[i]);
        prev = e;
    }
    if (!spec.terminal_infinity) return r;

    // Asymptotic points at p and 2p extrapolate E(inf) = 2 E(2p) - E(p) for the 1/p approach.
    const double unit = natural_units(base.trap).coupling;
    const double p1 = std::max(o.asymptotic * unit, 2.0 * spec.grid.back());
    const auto e1 = tr.step(r.paths, p1, window, &prev);
    const auto e2 = tr.step(r.paths, 2.0 * p1, window, &e1);
    const TwoBodyModel corner_model = detail::at(base, spec, Coupling::infinite());
    SolveOptions co = o.solve;
    co.method = Method::Auto;
    double top = 0;
    for (double x : e2) top = std::max(top, x);
    int count = n_max;
    TwoBodySpectrum corner = solve_two_body(corner_model, count, co);
    while (corner.levels.back().energy < top * (1 + 10 * o.attach_tol) && count < 4096)
        corner = solve_two_body(corner_model, count *= 2, co);

    for (std::size_t i = 0; i < r.paths.size(); ++i) {
        auto& p = r.paths[i];
        p.asymptote = 2.0 * e2[i] - e1[i];
        std::optional<int> best;
        for (std::size_t l = 0; l < corner.levels.size(); ++l) {
            const auto& lv = corner.levels[l];
            const bool has_sector = std::any_of(lv.members.begin(), lv.members.end(),
                                                [&](const TwoBodyMember& m) { return m.label == p.sector; });
            if (has_sector && std::abs(lv.energy - *p.asymptote) <= o.attach_tol * std::abs(lv.energy)) best = static_cast<int>(l);
        }
        if (!best)
            throw AttachmentFailure("sweep: path " + p.start_name + " (" + to_string(p.sector) + ") extrapolates to " +
                                    std::to_string(*p.asymptote) + " with no corner level within tolerance");
        p.corner_level = best;
        const auto& lv = corner.levels[static_cast<std::size_t>(*best)];
        p.corner_energy = lv.energy;
        std::vector<const TwoBodyMember*> same;
        for (const auto& m : lv.members)
            if (m.label == p.sector) same.push_back(&m);
        if (same.size() == 1) {
            p.end_name = same.front()->name;
            p.end = same.front()->composition;
        }
    }
    r.corner = std::move(corner);
    return r;
}

struct MergeEntry {
    double corner_energy = 0.0;
    int count = 0;         // paths attached to this corner level
    int multiplicity = 0;  // members of the corner level
    bool complete = false; // every path that could end here started inside the swept window
};

// Paths grouped by their attached corner level. Monotone sweeps only rise, so
// a corner at or below the highest start energy has all of its feeders.
inline std::vector<MergeEntry> endpoint_merge_report(const SweepResult& r) {
    std::vector<MergeEntry> out;
    if (!r.corner) return out;
    double top_start = 0;
    for (const auto& p : r.paths) top_start = std::max(top_start, p.energies.front());
    std::map<int, MergeEntry> by;
    for (const auto& p : r.paths) {
        if (!p.corner_level) continue;
        auto& e = by[*p.corner_level];
        const auto& lv = r.corner->levels[static_cast<std::size_t>(*p.corner_level)];
        e.corner_energy = lv.energy;
        e.multiplicity = lv.multiplicity;
        e.complete = lv.energy <= top_start * (1 + 1e-12);
        ++e.count;
    }
    for (auto& [k, e] : by) out.push_back(e);
    return out;
}

struct CrossingReport {
    int within_sector = 0;        // order flips between paths sharing an (exchange, parity) sector
    int within_conserved = 0;     // flips between paths that also share every conserved label
    std::vector<std::string> pairs;
};

// Counts adjacent-point order flips. Paths that carry different conserved
// keys may cross legitimately inside a raw sector; those count only in within_sector.
inline CrossingReport crossing_report(const SweepResult& r, double tol = 1e-9) {
    CrossingReport c;
    const auto& ps = r.paths;
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            if (!(ps[i].sector == ps[j].sector)) continue;
            bool flipped = false;
            for (std::size_t g = 1; g < ps[i].energies.size() && !flipped; ++g) {
                const double a0 = ps[i].energies[g - 1] - ps[j].energies[g - 1], a1 = ps[i].energies[g] - ps[j].energies[g];
                const double scale = tol * std::max(std::abs(ps[i].energies[g]), 1.0);
                flipped = (a0 > scale && a1 < -scale) || (a0 < -scale && a1 > scale);
            }
            if (!flipped) continue;
            ++c.within_sector;
            if (ps[i].key.empty() || ps[j].key.empty()) ++c.within_conserved;
            c.pairs.push_back(ps[i].start_name + " x " + ps[j].start_name);
        }
    return c;
}

// tau paths never fall; gamma paths never fall in [2] and stay flat in [1^2].
inline bool monotone(const SweepResult& r, const LevelPath& p, double tol = 1e-10) {
    for (std::size_t g = 1; g < p.energies.size(); ++g) {
        const double d = p.energies[g] - p.energies[g - 1], s = tol * std::max(std::abs(p.energies[g]), 1.0);
        if (d < -s) return false;
        if (r.spec.parameter == SweepParameter::Gamma && p.sector.exchange == Exchange::Antisymmetric && std::abs(d) > s)
            return false;
    }
    return true;
}

}  // namespace splitwell
