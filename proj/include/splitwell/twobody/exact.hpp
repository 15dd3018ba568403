#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "splitwell/numerics.hpp"
#include "splitwell/twobody/corners.hpp"

namespace splitwell {

namespace detail {

inline std::string pair_str(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

// Two bosons in a hard-wall box of length L with H = -1/2 sum d^2 + c delta.
// With S = k1 + k2 and D = k1 - k2 the quantisation conditions decouple:
//   x L + 2 atan(x / c) = pi m,   m = I1 + I2 for S, I1 - I2 for D,
// one root in (pi (m - 1) / L, pi m / L]. I2 = n1 + 1, I1 = n2 + 2 labels the
// c = 0 state (n1 n2)+, which moves to (n1, n2 + 1) as c -> inf.
inline double bethe_momentum(double L, const Coupling& c, int m) {
    const double pi = std::numbers::pi;
    if (c.is_zero()) return pi * (m - 1) / L;
    if (c.is_infinite()) return pi * m / L;
    const double cv = c.value();
    const auto g = [&](double x) { return x * L + 2.0 * std::atan(x / cv) - pi * m; };
    return find_root(g, {pi * (m - 1) / L, pi * m / L});
}

inline double bethe_energy(double L, const Coupling& c, int n1, int n2) {
    const int I1 = n2 + 2, I2 = n1 + 1;
    const double S = bethe_momentum(L, c, I1 + I2), D = bethe_momentum(L, c, I1 - I2);
    return 0.25 * (S * S + D * D);
}

inline double box_level(double L, int n) {
    const double k = std::numbers::pi * (n + 1) / L;
    return 0.5 * k * k;
}

// Relative even channel of the oscillator: nu_k in [2k, 2k + 1].
inline double busch_nu(const Coupling& kappa, int k) {
    if (kappa.is_zero()) return 2.0 * k;
    if (kappa.is_infinite()) return 2.0 * k + 1.0;
    const double t = kappa.value();
    return root_in_gap([&](double v) { return harmonic_even_secular(v, t); }, 2.0 * k, 2.0 * k + 1.0);
}

inline Coupling scaled(const Coupling& c, double f) { return c.is_infinite() ? c : Coupling(c.value() * f); }

inline TwoBodyMember bare(double e, Exchange x, Parity p, std::string name, std::string key, std::string wells = {}) {
    TwoBodyMember m;
    m.energy = e;
    m.label = {x, p};
    m.name = std::move(name);
    m.key = std::move(key);
    m.wells = std::move(wells);
    return m;
}

inline Parity parity_from(int s, bool known) { return !known ? Parity::None : s > 0 ? Parity::Even : Parity::Odd; }

inline int neg1pow(int n) { return n % 2 == 0 ? 1 : -1; }

// Same-well partners (A + C, A - C) of one same-well symmetric state.
inline void push_same_well(std::vector<TwoBodyMember>& out, double e, const std::string& base, bool diagonal) {
    out.push_back(bare(e, Exchange::Symmetric, Parity::Even, base + ";[2]+;1", {}, "same"));
    out.push_back(bare(e, Exchange::Symmetric, Parity::Odd, base + (diagonal ? ";[2]-" : ";[2]-;1"), {}, "same"));
}

// Members of the tau = inf, a = 0 Hamiltonian left untouched by the contact term.
inline void push_unshifted_quadrant(std::vector<TwoBodyMember>& out, double e, int m1, int m2, const std::string& prefix) {
    const Composition comp(2 * m1 + 1, 2 * m2 + 1);
    for (auto& q : quadrant_members(m1, m2, false)) {
        const bool same_sym = std::string(q.wells) == "same" && q.x == Exchange::Symmetric;
        if (same_sym) continue;
        TwoBodyMember t = bare(e, q.x, q.p, comp.str() + q.tail, {}, q.wells);
        t.composition = comp;
        t.key = prefix + t.name;
        out.push_back(std::move(t));
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Coordinate Bethe ansatz in the square well: tau = 0 at any gamma, and
// tau = inf with a centred barrier, where same-well pairs live in a half box.

inline TwoBodySpectrum bethe_isw(const TwoBodyModel& model, int n_max, const SolverOptions& opts = {}) {
    detail::check_count(n_max);
    const auto* isw = std::get_if<InfiniteSquareWell>(&model.trap);
    if (!isw) throw WrongLimit("bethe_isw needs the square well");
    const double L = isw->length;
    const double tol = opts.multiplet_tol > 0 ? opts.multiplet_tol : 1e-8;
    const Coupling& c = model.gamma;

    if (model.barrier.strength.is_zero()) {
        const bool known = model.symmetric();
        for (int M = n_max + 3;; M *= 2) {
            std::vector<TwoBodyMember> out;
            for (int n1 = 0; n1 < M; ++n1) {
                for (int n2 = n1; n2 < M; ++n2) {
                    const Composition comp(n1, n2);
                    const Parity p = detail::parity_from(detail::neg1pow(n1 + n2), known);
                    auto s = detail::bare(detail::bethe_energy(L, c, n1, n2), Exchange::Symmetric, p, comp.str() + "+",
                                          "bethe" + detail::pair_str(n2 + 2, n1 + 1));
                    s.composition = comp;
                    out.push_back(std::move(s));
                    if (n1 == n2) continue;
                    // the contact term never sees (n1 n2)-
                    auto a = detail::bare(detail::box_level(L, n1) + detail::box_level(L, n2), Exchange::Antisymmetric, p,
                                          comp.str() + "-", "sep" + comp.str() + "-");
                    a.composition = comp;
                    out.push_back(std::move(a));
                }
            }
            auto levels = detail::complete_levels(std::move(out), detail::box_level(L, 0) + detail::box_level(L, M), tol, n_max);
            if (static_cast<int>(levels.size()) >= n_max) return {std::move(levels), "bethe", tol, std::nullopt};
            if (M > 4096) throw NoConvergence("bethe_isw: too few complete levels");
        }
    }

    if (!model.barrier.strength.is_infinite() || !model.symmetric())
        throw WrongLimit("bethe_isw needs tau = 0, or tau = inf with a centred barrier");
    const double h = 0.5 * L;  // each well is a box of length L/2
    for (int M = n_max + 2;; M *= 2) {
        std::vector<TwoBodyMember> out;
        for (int m1 = 0; m1 < M; ++m1) {
            for (int m2 = m1; m2 < M; ++m2) {
                const double free_e = detail::box_level(h, m1) + detail::box_level(h, m2);
                const std::string base = Composition(2 * m1 + 1, 2 * m2 + 1).str();
                const std::size_t first = out.size();
                detail::push_same_well(out, detail::bethe_energy(h, c, m1, m2), base, m1 == m2);
                for (std::size_t k = first; k < out.size(); ++k) {
                    out[k].composition = Composition(2 * m1 + 1, 2 * m2 + 1);
                    out[k].key = "bethe-q" + out[k].name;
                }
                detail::push_unshifted_quadrant(out, free_e, m1, m2, "bethe-q");
            }
        }
        auto levels = detail::complete_levels(std::move(out), detail::box_level(h, 0) + detail::box_level(h, M), tol, n_max);
        if (static_cast<int>(levels.size()) >= n_max) return {std::move(levels), "bethe", tol, std::nullopt};
        if (M > 4096) throw NoConvergence("bethe_isw: too few complete levels");
    }
}

// ---------------------------------------------------------------------------
// Busch solution in the oscillator. tau = 0: centre of mass times the relative
// even channel at strength gamma / sqrt2. tau = inf, a = 0: in u = (x1 - x2)/sqrt2,
// v = (x1 + x2)/sqrt2 a same-well symmetric state is the antisymmetrised pair
// phi_a(u) phi_b(v) - phi_b(u) phi_a(v) of distinct even-channel functions;
// it vanishes on both walls x1 = 0 and x2 = 0.

inline TwoBodySpectrum busch_harmonic(const TwoBodyModel& model, int n_max, const SolverOptions& opts = {}) {
    detail::check_count(n_max);
    const auto* ho = std::get_if<Harmonic>(&model.trap);
    if (!ho) throw WrongLimit("busch_harmonic needs the harmonic trap");
    const double w = ho->omega;
    const double tol = opts.multiplet_tol > 0 ? opts.multiplet_tol : 1e-8;
    // dimensionless relative strength kappa = gamma / (hbar omega sigma sqrt2)
    const Coupling kappa = detail::scaled(model.gamma, 1.0 / (std::sqrt(w) * std::numbers::sqrt2));

    if (model.barrier.strength.is_zero()) {
        const bool known = model.symmetric();
        for (int Q = 2 * n_max + 2;; Q *= 2) {
            std::vector<TwoBodyMember> out;
            for (int k = 0; 2 * k <= Q; ++k) {
                const double nu = detail::busch_nu(kappa, k);
                for (int N = 0; N + 2 * k <= Q; ++N) {
                    const int p = detail::neg1pow(N);
                    out.push_back(detail::bare(w * (N + nu + 1.0), Exchange::Symmetric, detail::parity_from(p, known),
                                               "[N=" + std::to_string(N) + ",k=" + std::to_string(k) + "]+",
                                               "busch" + detail::pair_str(N, k)));
                    out.push_back(detail::bare(w * (N + 2.0 * k + 2.0), Exchange::Antisymmetric,
                                               detail::parity_from(-p, known),
                                               "[N=" + std::to_string(N) + ",k=" + std::to_string(k) + "]-",
                                               "busch-odd" + detail::pair_str(N, k)));
                }
            }
            auto levels = detail::complete_levels(std::move(out), w * (Q + 2.0), tol, n_max);
            if (static_cast<int>(levels.size()) >= n_max) return {std::move(levels), "busch", tol, std::nullopt};
            if (Q > 8192) throw NoConvergence("busch_harmonic: too few complete levels");
        }
    }

    if (!model.barrier.strength.is_infinite() || !model.symmetric())
        throw WrongLimit("busch_harmonic needs tau = 0, or tau = inf with a centred barrier");
    for (int K = n_max + 2;; K *= 2) {
        std::vector<TwoBodyMember> out;
        std::vector<double> e(static_cast<std::size_t>(K));
        for (int a = 0; a < K; ++a) e[static_cast<std::size_t>(a)] = detail::busch_nu(kappa, a) + 0.5;
        for (int a = 0; a < K; ++a)
            for (int b = a + 1; b < K; ++b) {
                const std::size_t first = out.size();
                detail::push_same_well(out, w * (e[static_cast<std::size_t>(a)] + e[static_cast<std::size_t>(b)]),
                                       "q" + detail::pair_str(a, b), false);
                for (std::size_t i = first; i < out.size(); ++i) out[i].key = "busch-" + out[i].name;
            }
        // odd-odd same-well pairs and split-well members keep their gamma = 0 energies
        for (int m1 = 0; m1 < K; ++m1)
            for (int m2 = m1; m2 < K; ++m2)
                detail::push_unshifted_quadrant(out, w * (2.0 * (m1 + m2) + 3.0), m1, m2, "busch-q");
        auto levels = detail::complete_levels(std::move(out), w * (2.0 * K + 1.0), tol, n_max);
        if (static_cast<int>(levels.size()) >= n_max) return {std::move(levels), "busch", tol, std::nullopt};
        if (K > 4096) throw NoConvergence("busch_harmonic: too few complete levels");
    }
}

}  // namespace splitwell
