#pragma once

#include <set>
#include <string>
#include <vector>

#include "splitwell/group.hpp"
#include "splitwell/twobody/types.hpp"

namespace splitwell {

enum class TauRegime { Finite, Infinite };  // Finite includes tau = 0
enum class GammaRegime { Zero, Finite, Infinite };

struct DegeneracyPrediction {
    std::set<int> allowed;
    std::string row;  // e.g. "H^inf_0"
    std::string col;  // "a=0" or "a!=0"
};

inline TauRegime tau_regime(const Coupling& tau) { return tau.is_infinite() ? TauRegime::Infinite : TauRegime::Finite; }
inline GammaRegime gamma_regime(const Coupling& g) {
    return g.is_zero() ? GammaRegime::Zero : g.is_infinite() ? GammaRegime::Infinite : GammaRegime::Finite;
}

// Systematic multiplicities of the generic two-well Hamiltonian.
inline DegeneracyPrediction predict_degeneracies(TauRegime tau, GammaRegime gamma, bool centred) {
    static const char* sub[] = {"0", "gamma", "inf"};
    const int g = static_cast<int>(gamma);
    DegeneracyPrediction p;
    p.row = std::string(tau == TauRegime::Finite ? "H^tau_" : "H^inf_") + sub[g];
    p.col = centred ? "a=0" : "a!=0";
    if (tau == TauRegime::Finite) {
        static const std::set<int> finite[] = {{1, 2}, {1}, {2}};
        p.allowed = finite[g];
    } else {
        static const std::set<int> off[] = {{1, 2}, {1, 2}, {2}};
        static const std::set<int> on[] = {{4, 8}, {2, 6}, {2, 8}};
        p.allowed = centred ? on[g] : off[g];
    }
    return p;
}

inline DegeneracyPrediction predict_degeneracies(const TwoBodyModel& m) {
    return predict_degeneracies(tau_regime(m.barrier.strength), gamma_regime(m.gamma), m.symmetric());
}

struct Multiplet {
    double energy = 0.0;
    int multiplicity = 0;
    friend bool operator==(const Multiplet&, const Multiplet&) = default;
};

// Transitive clustering of sorted energies: neighbours closer than tol (relative) merge.
inline std::vector<Multiplet> detect_multiplets(const std::vector<double>& energies, double tol) {
    std::vector<Multiplet> out;
    double sum = 0, last = 0;
    for (double e : energies) {
        if (!out.empty() && detail::same_multiplet(last, e, tol)) {
            ++out.back().multiplicity;
        } else {
            if (!out.empty()) out.back().energy = sum / out.back().multiplicity;
            out.push_back({e, 1});
            sum = 0;
        }
        sum += e;
        last = e;
    }
    if (!out.empty()) out.back().energy = sum / out.back().multiplicity;
    return out;
}

inline std::vector<Multiplet> detect_multiplets(const TwoBodySpectrum& s, double tol) {
    std::vector<double> e;
    for (const auto& l : s.levels)
        for (const auto& m : l.members) e.push_back(m.energy);
    std::sort(e.begin(), e.end());
    return detect_multiplets(e, tol);
}

enum class Verdict { Systematic, Accidental, Split };

inline std::string to_string(Verdict v) {
    return v == Verdict::Systematic ? "systematic" : v == Verdict::Accidental ? "accidental" : "split";
}

struct AuditEntry {
    double energy = 0.0;
    int multiplicity = 0;
    Verdict verdict = Verdict::Systematic;
};

struct AuditReport {
    DegeneracyPrediction prediction;
    double tol = 0.0;
    std::vector<AuditEntry> entries;
    int systematic = 0, accidental = 0, split = 0;
};

// A level outside the allowed set is "split" when merging it with neighbours
// inside the looser band (band_factor * tol) yields an allowed multiplicity:
// an expected multiplet resolved by numerical error. Otherwise it is accidental.
inline AuditReport audit(const std::vector<Multiplet>& levels, const DegeneracyPrediction& p, double tol,
                         double band_factor = 1e3) {
    AuditReport r{p, tol, {}, 0, 0, 0};
    const double band = tol * band_factor;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        AuditEntry e{levels[k].energy, levels[k].multiplicity, Verdict::Systematic};
        if (!p.allowed.count(e.multiplicity)) {
            std::size_t lo = k, hi = k;
            while (lo > 0 && detail::same_multiplet(levels[lo - 1].energy, levels[lo].energy, band)) --lo;
            while (hi + 1 < levels.size() && detail::same_multiplet(levels[hi].energy, levels[hi + 1].energy, band)) ++hi;
            int merged = 0;
            for (std::size_t j = lo; j <= hi; ++j) merged += levels[j].multiplicity;
            e.verdict = hi > lo && p.allowed.count(merged) ? Verdict::Split : Verdict::Accidental;
        }
        (e.verdict == Verdict::Systematic ? r.systematic : e.verdict == Verdict::Split ? r.split : r.accidental)++;
        r.entries.push_back(e);
    }
    return r;
}

inline AuditReport audit(const TwoBodySpectrum& s, const DegeneracyPrediction& p, double tol) {
    return audit(detect_multiplets(s, tol), p, tol);
}

}  // namespace splitwell
