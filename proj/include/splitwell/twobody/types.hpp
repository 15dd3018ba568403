#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "splitwell/error.hpp"
#include "splitwell/onebody.hpp"

namespace splitwell {

enum class Exchange { Symmetric, Antisymmetric };  // [2], [1^2]

struct SectorLabel {
    Exchange exchange = Exchange::Symmetric;
    Parity parity = Parity::None;  // None iff the barrier is off-centre

    friend bool operator==(const SectorLabel&, const SectorLabel&) = default;
    friend bool operator<(const SectorLabel& a, const SectorLabel& b) {
        return std::pair(a.exchange, static_cast<int>(a.parity)) < std::pair(b.exchange, static_cast<int>(b.parity));
    }
};

inline std::string to_string(Exchange e) { return e == Exchange::Symmetric ? "[2]" : "[1^2]"; }
inline std::string to_string(const SectorLabel& s) {
    return to_string(s.exchange) + (s.parity == Parity::None ? "" : to_string(s.parity));
}
inline int exchange_sign(Exchange e) { return e == Exchange::Symmetric ? 1 : -1; }

struct Composition {
    int n1 = 0, n2 = 0;
    Composition() = default;
    Composition(int a, int b) : n1(std::min(a, b)), n2(std::max(a, b)) {}
    friend bool operator==(const Composition&, const Composition&) = default;
    std::string str() const { return "(" + std::to_string(n1) + std::to_string(n2) + ")"; }
};

// Regions of the plane used by restricted kets. The six cells AI..D tile it.
enum class Region { Full, A, B, C, D, I, II, AI, AII, CI, CII };

inline unsigned region_mask(Region r) {
    constexpr unsigned ai = 1, aii = 2, ci = 4, cii = 8, b = 16, d = 32;
    switch (r) {
        case Region::Full: return 63;
        case Region::A: return ai | aii;
        case Region::B: return b;
        case Region::C: return ci | cii;
        case Region::D: return d;
        case Region::I: return ai | ci | b;
        case Region::II: return aii | cii | d;
        case Region::AI: return ai;
        case Region::AII: return aii;
        case Region::CI: return ci;
        case Region::CII: return cii;
    }
    return 0;
}

inline std::string to_string(Region r) {
    static const char* names[] = {"Full", "A", "B", "C", "D", "I", "II", "AI", "AII", "CI", "CII"};
    return names[static_cast<int>(r)];
}

// Full, I and II use the global orbitals phi_i. The quadrant family uses well
// functions f_m(x) = sqrt2 phi_{2m+1}(x) on x > 0 built from the unsplit
// trap's odd states, with f^L_m(x) = f_m(-x):
//   A = f f, B = f^L f, C = f^L f^L, D = f f^L   (x1 factor first)
//   I = (phi_i phi_j - phi_j phi_i) on x1 < x2, II = minus that on x1 > x2
//   AI/AII as I/II inside A with f; CII(x) = AI(-x), CI(x) = AII(-x).
struct KetTerm {
    Region region = Region::Full;
    int i = 0, j = 0;
    double coeff = 1.0;
};

struct PiecewiseSnippet {
    std::vector<KetTerm> terms;
    Composition constituent;  // one-body labels of the unsplit trap
};

// Symmetrised products: exchange +1 gives (phi_i phi_j + phi_j phi_i)/sqrt2,
// or phi_i phi_i when i == j; exchange -1 gives the antisymmetric partner.
struct BasisTerm {
    int i = 0, j = 0;
    int exchange = 1;
    friend bool operator==(const BasisTerm&, const BasisTerm&) = default;
};

struct BasisCoefficients {
    std::string basis;
    std::vector<BasisTerm> terms;
    std::vector<double> coeffs;
};

struct GridValues {
    std::vector<double> x;
    double dx = 0.0;
    std::vector<double> values;  // row-major, values[i * n + j] = psi(x_i, x_j)
};

using Representation = std::variant<BasisCoefficients, PiecewiseSnippet, GridValues>;

// Integration box and the lines along which states may have kinks.
struct Domain2D {
    double lo = -0.5, hi = 0.5;
    std::vector<double> cuts;  // interior breakpoints shared by both axes
};

struct OrbitalContext {
    std::shared_ptr<const OneBodySpectrum> orbitals;  // phi_i for Full, I, II and basis products
    std::shared_ptr<const OneBodySpectrum> wells;     // unsplit spectrum feeding the quadrant family
    Domain2D domain;
    std::string id;
};

struct EigenState {
    Representation rep;
    SectorLabel label;
    double energy = 0.0;
    std::shared_ptr<const OrbitalContext> ctx;
};

struct TwoBodyMember {
    double energy = 0.0;
    SectorLabel label;
    std::optional<Composition> composition;
    std::string key;    // conserved quantum numbers, stable along adiabatic paths
    std::string name;   // human-readable member name
    std::string wells;  // "same", "split" or empty; conserved when tau = inf
    std::optional<EigenState> state;
};

// Degeneracy counts per irrep; the off-centre case only fills the [2]/[1^2] totals.
struct IrrepArray {
    int sym_plus = 0, sym_minus = 0, anti_plus = 0, anti_minus = 0;
    int sym = 0, anti = 0;
    friend bool operator==(const IrrepArray&, const IrrepArray&) = default;
    std::string str() const {
        return "[" + std::to_string(sym_plus) + "," + std::to_string(sym_minus) + ";" + std::to_string(anti_plus) +
               "," + std::to_string(anti_minus) + "]";
    }
};

inline IrrepArray make_array(int sp, int sm, int ap, int am) { return {sp, sm, ap, am, sp + sm, ap + am}; }

struct TwoBodyLevel {
    double energy = 0.0;
    int multiplicity = 0;
    std::vector<TwoBodyMember> members;

    IrrepArray irreps() const {
        IrrepArray a;
        for (const auto& m : members) {
            const bool s = m.label.exchange == Exchange::Symmetric;
            (s ? a.sym : a.anti)++;
            if (m.label.parity == Parity::Even) (s ? a.sym_plus : a.anti_plus)++;
            if (m.label.parity == Parity::Odd) (s ? a.sym_minus : a.anti_minus)++;
        }
        return a;
    }
    std::vector<Composition> compositions() const {
        std::vector<Composition> out;
        for (const auto& m : members)
            if (m.composition && std::find(out.begin(), out.end(), *m.composition) == out.end())
                out.push_back(*m.composition);
        return out;
    }
};

struct ConvergenceReport {
    int basis_size = 0;
    int half_basis_size = 0;
    double max_change = 0.0;              // largest |E(basis) - E(basis/2)| over returned levels
    std::vector<double> changes;          // per returned symmetric level
    bool extrapolated = false;
    int fit_points = 0;
    int fit_degree = 0;
};

struct TwoBodySpectrum {
    std::vector<TwoBodyLevel> levels;
    std::string method;
    double multiplet_tol = 1e-8;
    std::optional<ConvergenceReport> convergence;

    std::vector<double> energies() const {
        std::vector<double> e;
        for (const auto& l : levels) e.push_back(l.energy);
        return e;
    }
    std::vector<TwoBodyMember> members() const {
        std::vector<TwoBodyMember> out;
        for (const auto& l : levels) out.insert(out.end(), l.members.begin(), l.members.end());
        return out;
    }
};

namespace detail {

inline bool same_multiplet(double a, double b, double tol) {
    return std::abs(b - a) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

// Sorts members and clusters neighbours whose relative gap is below tol.
// Only the lowest `count` levels are kept when count > 0.
inline std::vector<TwoBodyLevel> group_levels(std::vector<TwoBodyMember> members, double tol, int count = 0) {
    std::stable_sort(members.begin(), members.end(),
                     [](const TwoBodyMember& a, const TwoBodyMember& b) { return a.energy < b.energy; });
    std::vector<TwoBodyLevel> levels;
    for (auto& m : members) {
        if (levels.empty() || !same_multiplet(levels.back().members.back().energy, m.energy, tol)) {
            if (count > 0 && static_cast<int>(levels.size()) == count) break;
            levels.emplace_back();
        }
        levels.back().members.push_back(std::move(m));
    }
    for (auto& l : levels) {
        double s = 0;
        for (const auto& m : l.members) s += m.energy;
        l.energy = s / static_cast<double>(l.members.size());
        l.multiplicity = static_cast<int>(l.members.size());
    }
    return levels;
}

// Members strictly below `complete_below` are guaranteed complete; keep levels under it.
inline std::vector<TwoBodyLevel> complete_levels(std::vector<TwoBodyMember> members, double complete_below,
                                                 double tol, int count) {
    std::erase_if(members, [&](const TwoBodyMember& m) {
        return !(m.energy < complete_below) || same_multiplet(m.energy, complete_below, tol);
    });
    return group_levels(std::move(members), tol, count);
}

inline void check_count(int n_max) {
    if (n_max < 1) throw DomainError("n_max must be at least 1");
}

}  // namespace detail

}  // namespace splitwell
