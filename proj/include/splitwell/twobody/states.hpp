#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <tuple>
#include <vector>

#include "splitwell/twobody/types.hpp"

namespace splitwell {

namespace detail {

inline bool has_functions(const OneBodySpectrum* s, int index) {
    return s && index >= 0 && index < static_cast<int>(s->wavefunctions.size());
}

inline double orbital(const OrbitalContext& c, int i, double x) {
    if (!has_functions(c.orbitals.get(), i)) throw UnsupportedFormat("orbital has no closed-form wavefunction");
    return c.orbitals->wavefunctions[static_cast<std::size_t>(i)](x);
}

inline double well_fn(const OrbitalContext& c, int m, double x) {
    if (!(x > 0)) return 0.0;
    if (!has_functions(c.wells.get(), 2 * m + 1)) throw UnsupportedFormat("well function has no closed form");
    return std::numbers::sqrt2 * c.wells->wavefunctions[static_cast<std::size_t>(2 * m + 1)](x);
}

inline double ket_value(const OrbitalContext& c, const KetTerm& t, double x1, double x2) {
    const auto anti_phi = [&] { return orbital(c, t.i, x1) * orbital(c, t.j, x2) - orbital(c, t.j, x1) * orbital(c, t.i, x2); };
    const auto anti_f = [&](double y1, double y2) {
        return well_fn(c, t.i, y1) * well_fn(c, t.j, y2) - well_fn(c, t.j, y1) * well_fn(c, t.i, y2);
    };
    switch (t.region) {
        case Region::Full: return orbital(c, t.i, x1) * orbital(c, t.j, x2);
        case Region::A: return well_fn(c, t.i, x1) * well_fn(c, t.j, x2);
        case Region::B: return well_fn(c, t.i, -x1) * well_fn(c, t.j, x2);
        case Region::C: return well_fn(c, t.i, -x1) * well_fn(c, t.j, -x2);
        case Region::D: return well_fn(c, t.i, x1) * well_fn(c, t.j, -x2);
        case Region::I: return x1 < x2 ? anti_phi() : 0.0;
        case Region::II: return x1 > x2 ? -anti_phi() : 0.0;
        case Region::AI: return x1 < x2 ? anti_f(x1, x2) : 0.0;
        case Region::AII: return x1 > x2 ? -anti_f(x1, x2) : 0.0;
        case Region::CII: return x1 > x2 ? anti_f(-x1, -x2) : 0.0;
        case Region::CI: return x1 < x2 ? -anti_f(-x1, -x2) : 0.0;
    }
    return 0.0;
}

inline bool antisymmetric_region(Region r) {
    return r == Region::I || r == Region::II || r == Region::AI || r == Region::AII || r == Region::CI ||
           r == Region::CII;
}

using KetKey = std::tuple<int, int, int>;

// Folds a snippet into canonical kets; antisymmetric regions store i < j.
inline std::map<KetKey, double> canonical(const PiecewiseSnippet& s) {
    std::map<KetKey, double> out;
    for (const auto& t : s.terms) {
        int i = t.i, j = t.j;
        double c = t.coeff;
        if (antisymmetric_region(t.region)) {
            if (i == j) continue;
            if (i > j) {
                std::swap(i, j);
                c = -c;
            }
        }
        out[{static_cast<int>(t.region), i, j}] += c;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0.0; });
    return out;
}

// Distinct regions that share a cell break orthonormality of the ket family.
inline bool orthonormal_family(const std::map<KetKey, double>& a, const std::map<KetKey, double>& b) {
    std::vector<int> regions;
    for (const auto* m : {&a, &b})
        for (const auto& kv : *m) regions.push_back(std::get<0>(kv.first));
    std::sort(regions.begin(), regions.end());
    regions.erase(std::unique(regions.begin(), regions.end()), regions.end());
    for (std::size_t p = 0; p < regions.size(); ++p)
        for (std::size_t q = p + 1; q < regions.size(); ++q)
            if (region_mask(static_cast<Region>(regions[p])) & region_mask(static_cast<Region>(regions[q])))
                return false;
    return true;
}

inline Parity orbital_parity(const OrbitalContext& c, int i) {
    if (!c.orbitals || i >= static_cast<int>(c.orbitals->levels.size()))
        throw NotSymmetryEigenstate("orbital parity unknown");
    return c.orbitals->levels[static_cast<std::size_t>(i)].parity;
}

inline double orbital_parity_sign(const OrbitalContext& c, int i) {
    const Parity p = orbital_parity(c, i);
    if (p == Parity::None) throw NotSymmetryEigenstate("orbital has no definite parity");
    return sign_of(p);
}

inline KetTerm exchange_ket(const KetTerm& t) {
    KetTerm o = t;
    switch (t.region) {
        case Region::Full:
        case Region::A:
        case Region::C: std::swap(o.i, o.j); break;
        case Region::B: o.region = Region::D; std::swap(o.i, o.j); break;
        case Region::D: o.region = Region::B; std::swap(o.i, o.j); break;
        case Region::I: o.region = Region::II; break;
        case Region::II: o.region = Region::I; break;
        case Region::AI: o.region = Region::AII; break;
        case Region::AII: o.region = Region::AI; break;
        case Region::CI: o.region = Region::CII; break;
        case Region::CII: o.region = Region::CI; break;
    }
    return o;
}

inline KetTerm parity_ket(const OrbitalContext& c, const KetTerm& t) {
    KetTerm o = t;
    switch (t.region) {
        case Region::Full: o.coeff *= orbital_parity_sign(c, t.i) * orbital_parity_sign(c, t.j); break;
        case Region::A: o.region = Region::C; break;
        case Region::C: o.region = Region::A; break;
        case Region::B: o.region = Region::D; break;
        case Region::D: o.region = Region::B; break;
        case Region::I:
        case Region::II:
            o.region = t.region == Region::I ? Region::II : Region::I;
            o.coeff *= -orbital_parity_sign(c, t.i) * orbital_parity_sign(c, t.j);
            break;
        case Region::AI: o.region = Region::CII; break;
        case Region::CII: o.region = Region::AI; break;
        case Region::AII: o.region = Region::CI; break;
        case Region::CI: o.region = Region::AII; break;
    }
    return o;
}

// ---------------------------------------------------------------------------
// Piecewise Gauss-Legendre over a square. Diagonal cells are split along
// x1 = x2 and mapped onto collapsed coordinates.

inline double integrate2d(const std::function<double(double, double)>& f, const Domain2D& d, int points) {
    std::vector<double> edges{d.lo};
    for (double c : d.cuts)
        if (c > d.lo && c < d.hi) edges.push_back(c);
    edges.push_back(d.hi);
    std::sort(edges.begin(), edges.end());
    const QuadratureRule unit = gauss_legendre(points, 0.0, 1.0);
    double total = 0;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        for (std::size_t q = 0; q + 1 < edges.size(); ++q) {
            const double a1 = edges[p], b1 = edges[p + 1], a2 = edges[q], b2 = edges[q + 1];
            if (p != q) {
                for (std::size_t s = 0; s < unit.nodes.size(); ++s)
                    for (std::size_t t = 0; t < unit.nodes.size(); ++t)
                        total += unit.weights[s] * unit.weights[t] * (b1 - a1) * (b2 - a2) *
                                 f(a1 + (b1 - a1) * unit.nodes[s], a2 + (b2 - a2) * unit.nodes[t]);
                continue;
            }
            const double w = b1 - a1;
            for (std::size_t s = 0; s < unit.nodes.size(); ++s) {
                const double x1 = a1 + w * unit.nodes[s];
                for (std::size_t t = 0; t < unit.nodes.size(); ++t) {
                    const double wt = unit.weights[s] * unit.weights[t] * w;
                    // upper triangle x2 > x1, then its mirror x2 < x1
                    const double up = x1 + (b1 - x1) * unit.nodes[t];
                    const double dn = a1 + (x1 - a1) * unit.nodes[t];
                    total += wt * ((b1 - x1) * f(x1, up) + (x1 - a1) * f(x1, dn));
                }
            }
        }
    }
    return total;
}

}  // namespace detail

inline bool evaluable(const EigenState& s) {
    if (std::holds_alternative<GridValues>(s.rep) || !s.ctx) return false;
    const auto* ctx = s.ctx.get();
    if (const auto* b = std::get_if<BasisCoefficients>(&s.rep)) {
        for (const auto& t : b->terms)
            if (!detail::has_functions(ctx->orbitals.get(), std::max(t.i, t.j))) return false;
        return true;
    }
    for (const auto& t : std::get<PiecewiseSnippet>(s.rep).terms) {
        const bool global = t.region == Region::Full || t.region == Region::I || t.region == Region::II;
        const int need = global ? std::max(t.i, t.j) : 2 * std::max(t.i, t.j) + 1;
        if (!detail::has_functions(global ? ctx->orbitals.get() : ctx->wells.get(), need)) return false;
    }
    return true;
}

inline double evaluate(const EigenState& s, double x1, double x2) {
    if (!s.ctx) throw UnsupportedFormat("state has no orbital context");
    const auto& c = *s.ctx;
    if (const auto* b = std::get_if<BasisCoefficients>(&s.rep)) {
        double v = 0;
        for (std::size_t k = 0; k < b->terms.size(); ++k) {
            const auto& t = b->terms[k];
            const double p = detail::orbital(c, t.i, x1) * detail::orbital(c, t.j, x2);
            if (t.i == t.j) {
                v += b->coeffs[k] * p;
                continue;
            }
            const double q = detail::orbital(c, t.j, x1) * detail::orbital(c, t.i, x2);
            v += b->coeffs[k] * (p + t.exchange * q) / std::numbers::sqrt2;
        }
        return v;
    }
    if (const auto* p = std::get_if<PiecewiseSnippet>(&s.rep)) {
        double v = 0;
        for (const auto& t : p->terms) v += t.coeff * detail::ket_value(c, t, x1, x2);
        return v;
    }
    throw UnsupportedFormat("grid states are only defined on their nodes");
}

inline int default_points(const EigenState& s) {
    const auto* o = s.ctx && s.ctx->orbitals ? s.ctx->orbitals.get() : nullptr;
    const int n = o ? static_cast<int>(o->levels.size()) : 8;
    return std::clamp(24 + 4 * n, 32, 160);
}

inline double inner_numeric(const EigenState& a, const EigenState& b, int points = 0) {
    const Domain2D& d = a.ctx->domain;
    const int n = points > 0 ? points : std::max(default_points(a), default_points(b));
    return detail::integrate2d([&](double x1, double x2) { return evaluate(a, x1, x2) * evaluate(b, x1, x2); }, d, n);
}

namespace detail {

inline std::optional<double> inner_algebraic(const EigenState& a, const EigenState& b) {
    if (a.ctx != b.ctx) return std::nullopt;
    if (const auto* ba = std::get_if<BasisCoefficients>(&a.rep)) {
        const auto* bb = std::get_if<BasisCoefficients>(&b.rep);
        if (!bb || ba->basis != bb->basis) return std::nullopt;
        double s = 0;
        for (std::size_t p = 0; p < ba->terms.size(); ++p)
            for (std::size_t q = 0; q < bb->terms.size(); ++q)
                if (ba->terms[p] == bb->terms[q]) s += ba->coeffs[p] * bb->coeffs[q];
        return s;
    }
    if (const auto* pa = std::get_if<PiecewiseSnippet>(&a.rep)) {
        const auto* pb = std::get_if<PiecewiseSnippet>(&b.rep);
        if (!pb) return std::nullopt;
        const auto ca = canonical(*pa), cb = canonical(*pb);
        if (!orthonormal_family(ca, cb)) return std::nullopt;
        double s = 0;
        for (const auto& [k, v] : ca)
            if (auto it = cb.find(k); it != cb.end()) s += v * it->second;
        return s;
    }
    const auto* ga = std::get_if<GridValues>(&a.rep);
    const auto* gb = std::get_if<GridValues>(&b.rep);
    if (!gb || ga->values.size() != gb->values.size()) return std::nullopt;
    double s = 0;
    for (std::size_t i = 0; i < ga->values.size(); ++i) s += ga->values[i] * gb->values[i];
    return s * ga->dx * ga->dx;
}

// Applies X (exchange) or P (parity) exactly, when the representation allows it.
inline std::optional<EigenState> apply_symmetry(const EigenState& s, bool parity) {
    EigenState o = s;
    if (auto* b = std::get_if<BasisCoefficients>(&o.rep)) {
        for (std::size_t k = 0; k < b->terms.size(); ++k) {
            const auto& t = b->terms[k];
            b->coeffs[k] *= parity ? orbital_parity_sign(*s.ctx, t.i) * orbital_parity_sign(*s.ctx, t.j) : t.exchange;
        }
        return o;
    }
    if (auto* p = std::get_if<PiecewiseSnippet>(&o.rep)) {
        for (auto& t : p->terms) t = parity ? parity_ket(*s.ctx, t) : exchange_ket(t);
        return o;
    }
    auto& g = std::get<GridValues>(o.rep);
    const auto& src = std::get<GridValues>(s.rep).values;
    const std::size_t n = g.x.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g.values[i * n + j] = parity ? src[(n - 1 - i) * n + (n - 1 - j)] : src[j * n + i];
    return o;
}

}  // namespace detail

inline double inner(const EigenState& a, const EigenState& b) {
    if (auto v = detail::inner_algebraic(a, b)) return *v;
    if (!evaluable(a) || !evaluable(b)) throw UnsupportedFormat("no common representation for the inner product");
    return inner_numeric(a, b);
}

// <psi| X |psi> or <psi| P |psi>.
inline double symmetry_expectation(const EigenState& s, bool parity) {
    try {
        if (auto t = detail::apply_symmetry(s, parity))
            if (auto v = detail::inner_algebraic(s, *t)) return *v;
    } catch (const NotSymmetryEigenstate&) {
        if (!evaluable(s)) throw;
    }
    if (!evaluable(s)) throw UnsupportedFormat("state cannot be reflected");
    return detail::integrate2d(
        [&](double x1, double x2) {
            return evaluate(s, x1, x2) * (parity ? evaluate(s, -x1, -x2) : evaluate(s, x2, x1));
        },
        s.ctx->domain, default_points(s));
}

inline SectorLabel sector_project(const EigenState& s, const TwoBodyModel& model, double tol = 1e-8) {
    const double x = symmetry_expectation(s, false);
    SectorLabel out;
    if (std::abs(x - 1.0) < tol) out.exchange = Exchange::Symmetric;
    else if (std::abs(x + 1.0) < tol) out.exchange = Exchange::Antisymmetric;
    else throw NotSymmetryEigenstate("exchange expectation " + std::to_string(x) + " is not +-1");
    if (!model.symmetric()) return out;
    const double p = symmetry_expectation(s, true);
    if (std::abs(p - 1.0) < tol) out.parity = Parity::Even;
    else if (std::abs(p + 1.0) < tol) out.parity = Parity::Odd;
    else throw NotSymmetryEigenstate("parity expectation " + std::to_string(p) + " is not +-1");
    return out;
}

}  // namespace splitwell
