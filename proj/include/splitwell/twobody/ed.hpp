#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "splitwell/numerics.hpp"
#include "splitwell/twobody/corners.hpp"

namespace splitwell {

enum class BasisShape { Auto, Square, EnergyShell };

struct EdOptions {
    BasisShape shape = BasisShape::Auto;   // Auto: Square for the square well, EnergyShell otherwise
    bool extrapolate = false;              // fit symmetric levels in eps_max^{-1/2}
    int fit_degree = 4;
    std::optional<double> tolerance;       // relative; BasisTooSmall when basis vs basis/2 exceeds it
    SolverOptions solver;
};

namespace detail {

struct EdBasis {
    std::shared_ptr<const OneBodySpectrum> orbitals;
    std::vector<BasisTerm> pairs;   // symmetric products, ordered so every admissible basis is a prefix
    std::vector<double> energy;     // eps_i + eps_j per pair
    struct Cut {
        std::size_t size;
        double eps_max;  // largest one-body energy in the prefix
        double edge;     // lowest two-body energy left out
    };
    std::vector<Cut> cuts;  // admissible prefixes, ascending
    Eigen::MatrixXd contact;  // <P| delta(x1 - x2) |Q> over all pairs
    bool blocks = false;      // parity sectors separable
    bool square = false;
    std::string quadrature;
};

struct Nodes {
    Eigen::MatrixXd phi;  // phi(q, i) at node q
    Eigen::VectorXd sw;   // sqrt of the node weight
};

inline Nodes orbital_nodes(const OneBodySpectrum& s, int count, std::string& how) {
    const auto fill = [&](const std::vector<double>& x, const std::vector<double>& w) {
        Nodes n{Eigen::MatrixXd(static_cast<Eigen::Index>(x.size()), count), Eigen::VectorXd(static_cast<Eigen::Index>(x.size()))};
        for (std::size_t q = 0; q < x.size(); ++q) {
            const auto r = static_cast<Eigen::Index>(q);
            n.sw(r) = std::sqrt(w[q]);
            for (int i = 0; i < count; ++i) n.phi(r, i) = s.wavefunctions[static_cast<std::size_t>(i)](x[q]);
        }
        return n;
    };
    const double kmax = std::sqrt(2.0 * std::max(s.levels[static_cast<std::size_t>(count - 1)].energy, 1.0));
    if (s.kind == WaveKind::Hermite) {
        // products of four oscillator functions are polynomial times exp(-2 omega x^2)
        const double omega = 1.0 / (s.length * s.length);
        const auto gh = gauss_hermite_scaled(2 * count + 10);
        std::vector<double> x, w;
        for (std::size_t q = 0; q < gh.nodes.size(); ++q) {
            const double y = gh.nodes[q];
            x.push_back(y / std::sqrt(2.0 * omega));
            w.push_back(gh.weights[q] / std::sqrt(2.0 * omega));
        }
        how = "gauss-hermite";
        return fill(x, w);
    }
    if (s.kind == WaveKind::Grid) {
        const auto& g = *s.grid;
        const auto m = static_cast<Eigen::Index>(g.x.size());
        Nodes n{Eigen::MatrixXd(m, count), Eigen::VectorXd::Constant(m, std::sqrt(g.dx))};
        for (int i = 0; i < count; ++i)
            for (Eigen::Index q = 0; q < m; ++q) n.phi(q, i) = g.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(q)];
        how = "trapezoid";  // Dirichlet ends vanish, so the end weights do not matter
        return n;
    }
    std::vector<double> cuts = s.breakpoints;
    if (cuts.size() < 2) {
        const double hw = 0.5 * s.length;
        cuts = {-hw, hw};
    }
    std::vector<double> x, w;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double len = cuts[k + 1] - cuts[k];
        if (!(len > 0)) continue;
        const int panels = static_cast<int>(std::ceil(kmax * len / std::numbers::pi)) + 2;
        for (int p = 0; p < panels; ++p) {
            const auto gl = gauss_legendre(20, cuts[k] + len * p / panels, cuts[k] + len * (p + 1) / panels);
            x.insert(x.end(), gl.nodes.begin(), gl.nodes.end());
            w.insert(w.end(), gl.weights.begin(), gl.weights.end());
        }
    }
    how = "gauss-legendre";
    return fill(x, w);
}

// Box sines phi_n = sqrt(2/L) sin(n pi (x + L/2) / L), n = index + 1:
// the four-sine integral collapses to Kronecker deltas.
inline double isw_quartic_integral(double L, int a, int b, int c, int d) {
    const auto I = [L](int p, int q) { return 0.5 * L * ((p == q ? 1.0 : 0.0) + (p == -q ? 1.0 : 0.0)); };
    ++a, ++b, ++c, ++d;
    return (1.0 / (L * L)) * (I(a - b, c - d) - I(a - b, c + d) - I(a + b, c - d) + I(a + b, c + d));
}

inline double pair_norm(const BasisTerm& t) { return t.i == t.j ? 1.0 : std::numbers::sqrt2; }

inline Eigen::MatrixXd contact_matrix(const OneBodySpectrum& s, const std::vector<BasisTerm>& pairs, int count,
                                      bool closed_form, std::string& how) {
    const auto n = static_cast<Eigen::Index>(pairs.size());
    Eigen::MatrixXd D(n, n);
    if (closed_form) {
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p; q < n; ++q) {
                const auto &P = pairs[static_cast<std::size_t>(p)], &Q = pairs[static_cast<std::size_t>(q)];
                D(p, q) = D(q, p) = pair_norm(P) * pair_norm(Q) * isw_quartic_integral(s.length, P.i, P.j, Q.i, Q.j);
            }
        how = "closed-form";
        return D;
    }
    const Nodes y = orbital_nodes(s, count, how);
    Eigen::MatrixXd F(n, y.phi.rows());
    for (Eigen::Index p = 0; p < n; ++p) {
        const auto& P = pairs[static_cast<std::size_t>(p)];
        F.row(p) = (pair_norm(P) * y.sw.array() * y.phi.col(P.i).array() * y.phi.col(P.j).array()).matrix().transpose();
    }
    return F * F.transpose();
}


// Pair list plus admissible prefixes; never splits a degenerate multiplet.
inline EdBasis make_basis(const TwoBodyModel& model, int basis_size, BasisShape shape, const SolverOptions& opts) {
    const bool square = shape == BasisShape::Square ||
                        (shape == BasisShape::Auto && std::holds_alternative<InfiniteSquareWell>(model.trap));
    int M = square ? static_cast<int>(std::sqrt(2.0 * basis_size)) + 2 : static_cast<int>(2 * std::sqrt(basis_size)) + 4;
    for (;; M *= 2) {
        OneBodySpectrum one = one_body(model.trap, model.barrier, M + 1, opts);
        const double tol = default_tol(one, opts);
        if (one.kind == WaveKind::None) {
            // energies without closed-form functions: take the functions from the grid
            OneBodySpectrum g = solve_grid(model.trap, model.barrier, opts.grid_size, M + 1, opts.grid);
            for (std::size_t i = 0; i < one.levels.size() && i < g.levels.size(); ++i) {
                g.levels[i].energy = one.levels[i].energy;
                if (one.levels[i].parity != Parity::None) g.levels[i].parity = one.levels[i].parity;
            }
            one = std::move(g);
        }
        if (static_cast<int>(one.levels.size()) < M + 1) throw NoConvergence("ed basis: too few one-body levels");
        const auto eps = [&](int i) { return one.levels[static_cast<std::size_t>(i)].energy; };

        EdBasis b;
        b.square = square;
        for (int i = 0; i < M; ++i)
            for (int j = i; j < M; ++j) b.pairs.push_back({i, j, 1});
        const auto e = [&](const BasisTerm& t) { return eps(t.i) + eps(t.j); };
        if (square)
            std::stable_sort(b.pairs.begin(), b.pairs.end(), [](const BasisTerm& x, const BasisTerm& y) {
                return std::max(x.i, x.j) < std::max(y.i, y.j);
            });
        else
            std::stable_sort(b.pairs.begin(), b.pairs.end(), [&](const BasisTerm& x, const BasisTerm& y) { return e(x) < e(y); });
        for (const auto& t : b.pairs) b.energy.push_back(e(t));

        const double outside = eps(0) + eps(M);  // every pair touching orbital M or above
        if (square) {
            for (int m = 1; m <= M; ++m) {
                if (same_multiplet(eps(m - 1), eps(m), tol)) continue;
                b.cuts.push_back({static_cast<std::size_t>(m * (m + 1) / 2), eps(m - 1), eps(0) + eps(m)});
            }
        } else {
            double top = 0;
            for (std::size_t k = 0; k < b.pairs.size(); ++k) {
                top = std::max(top, eps(b.pairs[k].j));
                const bool last = k + 1 == b.pairs.size();
                if (!last && same_multiplet(b.energy[k], b.energy[k + 1], tol)) continue;
                const double edge = last ? outside : std::min(b.energy[k + 1], outside);
                if (!(b.energy[k] < outside) || same_multiplet(b.energy[k], outside, tol)) break;
                b.cuts.push_back({k + 1, top, edge});
            }
        }
        std::erase_if(b.cuts, [&](const EdBasis::Cut& c) { return static_cast<int>(c.size) > basis_size; });
        const bool saturated = !square && !b.cuts.empty() && b.cuts.back().edge >= outside;
        if (b.cuts.empty()) throw BasisTooSmall("basis_size admits no complete shell");
        if (saturated && M < 8 * basis_size) continue;

        const std::size_t used = b.cuts.back().size;
        b.pairs.resize(used);
        b.energy.resize(used);
        int count = 0;
        for (const auto& t : b.pairs) count = std::max(count, t.j + 1);
        b.blocks = model.symmetric();
        for (int i = 0; i < count; ++i)
            if (one.levels[static_cast<std::size_t>(i)].parity == Parity::None) b.blocks = false;
        const bool closed = one.kind == WaveKind::IswSines && model.barrier.strength.is_zero();
        b.orbitals = std::make_shared<const OneBodySpectrum>(std::move(one));
        b.contact = contact_matrix(*b.orbitals, b.pairs, count, closed, b.quadrature);
        return b;
    }
}

inline Parity pair_parity_of(const OneBodySpectrum& s, const BasisTerm& t, bool blocks) {
    if (!blocks) return Parity::None;
    return sign_of(s.levels[static_cast<std::size_t>(t.i)].parity) * sign_of(s.levels[static_cast<std::size_t>(t.j)].parity) > 0
               ? Parity::Even
               : Parity::Odd;
}

struct BlockSolution {
    Parity parity;
    std::vector<std::size_t> index;  // pair indices in this block
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

inline std::vector<BlockSolution> solve_blocks(const EdBasis& b, std::size_t size, double gamma, bool vectors) {
    std::vector<BlockSolution> out;
    const std::vector<Parity> sectors = b.blocks ? std::vector<Parity>{Parity::Even, Parity::Odd} : std::vector<Parity>{Parity::None};
    for (Parity p : sectors) {
        BlockSolution s{p, {}, {}, {}};
        for (std::size_t k = 0; k < size; ++k)
            if (pair_parity_of(*b.orbitals, b.pairs[k], b.blocks) == p) s.index.push_back(k);
        const auto n = static_cast<Eigen::Index>(s.index.size());
        if (n == 0) continue;
        Eigen::MatrixXd H(n, n);
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < n; ++c)
                H(r, c) = gamma * b.contact(static_cast<Eigen::Index>(s.index[static_cast<std::size_t>(r)]),
                                            static_cast<Eigen::Index>(s.index[static_cast<std::size_t>(c)]));
        for (Eigen::Index r = 0; r < n; ++r) H(r, r) += b.energy[s.index[static_cast<std::size_t>(r)]];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw NoConvergence("ed: eigensolver failed");
        s.values = es.eigenvalues();
        if (vectors) s.vectors = es.eigenvectors();
        out.push_back(std::move(s));
    }
    return out;
}

// Symmetric energies per block at one prefix, optionally extrapolated to
// eps_max -> inf through the prefixes below it.
struct BlockEnergies {
    std::vector<std::vector<double>> values;  // [block][level]
    int fit_points = 0;
};

inline BlockEnergies block_energies(const EdBasis& b, std::size_t cut, double gamma, const EdOptions& o, int keep) {
    BlockEnergies r;
    const auto raw = [&](std::size_t c) {
        std::vector<std::vector<double>> v;
        for (const auto& s : solve_blocks(b, b.cuts[c].size, gamma, false))
            v.emplace_back(s.values.data(), s.values.data() + std::min<Eigen::Index>(s.values.size(), keep));
        return v;
    };
    r.values = raw(cut);
    if (!o.extrapolate || gamma == 0.0) return r;
    // a shell step adds one parity only, so shells advance in pairs
    const std::size_t step = b.square ? 1 : 2;
    std::vector<std::size_t> fit;
    for (std::size_t c = cut + 1; c-- > 0;) {
        if ((cut - c) % step != 0) continue;
        if (4 * b.cuts[c].size < b.cuts[cut].size) break;
        fit.push_back(c);
    }
    const int degree = std::min<int>(o.fit_degree, static_cast<int>(fit.size()) - 1);
    if (degree < 1) return r;
    std::vector<double> x;
    std::vector<std::vector<std::vector<double>>> ys;
    for (std::size_t c : fit) {
        x.push_back(1.0 / std::sqrt(b.cuts[c].eps_max));
        ys.push_back(raw(c));
    }
    for (std::size_t blk = 0; blk < r.values.size(); ++blk) {
        // only the lower half of the smallest fit basis is trusted; higher levels stay raw
        std::size_t trusted = r.values[blk].size();
        for (const auto& y : ys) trusted = std::min(trusted, blk < y.size() ? y[blk].size() / 2 : 0);
        for (std::size_t k = 0; k < trusted; ++k) {
            std::vector<double> y;
            for (const auto& v : ys) y.push_back(v[blk][k]);
            r.values[blk][k] = polyfit(x, y, degree)[0];
        }
    }
    r.fit_points = static_cast<int>(fit.size());
    return r;
}

}  // namespace detail

// Exact diagonalisation of the symmetric sector in symmetrised one-body
// products; the antisymmetric sector is returned at its gamma = 0 energies.
inline TwoBodySpectrum ed_solve(const TwoBodyModel& model, int basis_size, int n_max, const EdOptions& opts = {}) {
    detail::check_count(n_max);
    if (model.gamma.is_infinite()) throw WrongLimit("ed_solve needs finite gamma; use the constructive unitary route");
    if (basis_size < 3) throw DomainError("basis_size must be at least 3");
    const double gamma = model.gamma.value();
    const detail::EdBasis b = detail::make_basis(model, basis_size, opts.shape, opts.solver);
    const double tol = opts.solver.multiplet_tol > 0 ? opts.solver.multiplet_tol : 1e-6;
    const std::size_t top = b.cuts.size() - 1;
    const double edge = b.cuts[top].edge;
    const OneBodySpectrum& one = *b.orbitals;
    const int keep = std::numeric_limits<int>::max();  // degenerate shells need every eigenvalue below the edge

    const auto sym = detail::block_energies(b, top, gamma, opts, keep);
    const auto vecs = detail::solve_blocks(b, b.cuts[top].size, gamma, true);
    auto ctx = detail::make_context(model.trap, b.orbitals, b.orbitals, model.barrier.offset, "ed");

    std::vector<TwoBodyMember> members;
    for (std::size_t blk = 0; blk < vecs.size(); ++blk) {
        const auto& s = vecs[blk];
        for (std::size_t k = 0; k < sym.values[blk].size(); ++k) {
            TwoBodyMember m;
            m.energy = sym.values[blk][k];
            m.label = {Exchange::Symmetric, s.parity};
            m.name = to_string(m.label) + " #" + std::to_string(k);
            BasisCoefficients c{"ed", {}, {}};
            for (std::size_t r = 0; r < s.index.size(); ++r) {
                c.terms.push_back(b.pairs[s.index[r]]);
                c.coeffs.push_back(s.vectors(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)));
            }
            m.state = EigenState{std::move(c), m.label, s.values(static_cast<Eigen::Index>(k)), ctx};
            members.push_back(std::move(m));
        }
    }
    for (std::size_t k = 0; k < b.cuts[top].size; ++k) {
        const auto& t = b.pairs[k];
        if (t.i == t.j) continue;
        TwoBodyMember m;
        m.energy = b.energy[k];
        m.label = {Exchange::Antisymmetric, detail::pair_parity_of(one, t, b.blocks)};
        m.composition = Composition(t.i, t.j);
        m.name = m.composition->str() + "-";
        m.key = "sep" + m.name;
        m.state = EigenState{BasisCoefficients{"ed", {{t.i, t.j, -1}}, {1.0}}, m.label, m.energy, ctx};
        members.push_back(std::move(m));
    }
    auto levels = detail::complete_levels(std::move(members), edge, tol, n_max);
    if (static_cast<int>(levels.size()) < n_max) throw BasisTooSmall("ed_solve: basis holds fewer than n_max complete levels");

    // last-increment estimate: same procedure on the largest prefix within basis_size / 2
    ConvergenceReport rep;
    rep.basis_size = static_cast<int>(b.cuts[top].size);
    std::size_t half = 0;
    while (half + 1 < b.cuts.size() && 2 * b.cuts[half + 1].size <= b.cuts[top].size) ++half;
    rep.half_basis_size = static_cast<int>(b.cuts[half].size);
    const auto coarse = detail::block_energies(b, half, gamma, opts, keep);
    for (const auto& l : levels)
        for (const auto& m : l.members) {
            if (m.label.exchange != Exchange::Symmetric) continue;
            const std::size_t blk = b.blocks ? (m.label.parity == Parity::Even ? 0 : 1) : 0;
            const auto k = static_cast<std::size_t>(std::stoi(m.name.substr(m.name.find('#') + 1)));
            double ch = std::numeric_limits<double>::infinity();
            if (blk < coarse.values.size() && k < coarse.values[blk].size())
                ch = std::abs(coarse.values[blk][k] - m.energy) / std::max(std::abs(m.energy), 1e-300);
            rep.changes.push_back(ch);
            rep.max_change = std::max(rep.max_change, ch);
        }
    rep.extrapolated = opts.extrapolate && gamma != 0.0 && sym.fit_points > 1;
    rep.fit_points = sym.fit_points;
    rep.fit_degree = rep.extrapolated ? std::min(opts.fit_degree, sym.fit_points - 1) : 0;
    if (opts.tolerance && rep.max_change > *opts.tolerance)
        throw BasisTooSmall("ed_solve: last-increment change " + std::to_string(rep.max_change) + " exceeds tolerance");
    return {std::move(levels), "ed:" + b.quadrature + (rep.extrapolated ? "+extrapolated" : ""), tol, rep};
}

}  // namespace splitwell
