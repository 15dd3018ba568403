#pragma once

#include <string>

#include "splitwell/twobody/corners.hpp"
#include "splitwell/twobody/ed.hpp"
#include "splitwell/twobody/exact.hpp"
#include "splitwell/twobody/states.hpp"
#include "splitwell/twobody/types.hpp"

namespace splitwell {

enum class Method { Auto, Separable, Girardeau, Quadrant, Bethe, Busch, Ed };

inline std::string to_string(Method m) {
    static const char* names[] = {"auto", "separable", "girardeau", "quadrant", "bethe", "busch", "ed"};
    return names[static_cast<int>(m)];
}

inline Method parse_method(const std::string& s) {
    for (int k = 0; k <= static_cast<int>(Method::Ed); ++k)
        if (to_string(static_cast<Method>(k)) == s) return static_cast<Method>(k);
    throw DomainError("unknown method: " + s);
}

struct SolveOptions {
    Method method = Method::Auto;
    int basis_size = 600;
    EdOptions ed;
};

// Corners go to the constructive routes, exactly solvable interiors to
// Bethe/Busch, everything else to exact diagonalisation.
inline Method choose_method(const TwoBodyModel& m) {
    const bool quadrant = m.barrier.strength.is_infinite() && m.symmetric();
    const bool exact_tau = m.barrier.strength.is_zero() || quadrant;
    if (m.gamma.is_zero()) return quadrant ? Method::Quadrant : Method::Separable;
    if (m.gamma.is_infinite()) return quadrant ? Method::Quadrant : Method::Girardeau;
    if (exact_tau && std::holds_alternative<InfiniteSquareWell>(m.trap)) return Method::Bethe;
    if (exact_tau && std::holds_alternative<Harmonic>(m.trap)) return Method::Busch;
    return Method::Ed;
}

inline TwoBodySpectrum solve_two_body(const TwoBodyModel& m, int n_max, const SolveOptions& o = {}) {
    const Method method = o.method == Method::Auto ? choose_method(m) : o.method;
    switch (method) {
        case Method::Separable: return build_separable(m, n_max, o.ed.solver);
        case Method::Girardeau: {
            if (!m.gamma.is_infinite()) throw WrongLimit("girardeau route needs gamma = inf");
            return solve_unitary(m, n_max, o.ed.solver);
        }
        case Method::Quadrant: return quadrant_construct(m, n_max, o.ed.solver);
        case Method::Bethe: return bethe_isw(m, n_max, o.ed.solver);
        case Method::Busch: return busch_harmonic(m, n_max, o.ed.solver);
        case Method::Ed: return ed_solve(m, o.basis_size, n_max, o.ed);
        case Method::Auto: break;
    }
    throw DomainError("unreachable method");
}

}  // namespace splitwell
