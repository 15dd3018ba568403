#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "splitwell/error.hpp"
#include "splitwell/group.hpp"
#include "splitwell/model.hpp"
#include "splitwell/numerics.hpp"

namespace splitwell {

enum class Parity : int { Odd = -1, None = 0, Even = 1 };
enum class Well { None, Left, Right };

inline int sign_of(Parity p) { return static_cast<int>(p); }
inline std::string to_string(Parity p) { return p == Parity::Even ? "+" : p == Parity::Odd ? "-" : "n/a"; }
inline std::string to_string(Well w) { return w == Well::Left ? "left" : w == Well::Right ? "right" : "n/a"; }

// At tau = inf and a = 0 each exact pair is reported once with well labels
// (left, right) and parity labels (+, -): the pair spans either basis. The
// stored wavefunctions are the parity combinations.
struct OneBodyLevel {
    double energy;
    int index;
    Parity parity = Parity::None;
    Well well = Well::None;
    int well_index = -1;
};

// How the stored wavefunctions may be integrated.
enum class WaveKind {
    None,       // energies only
    IswSines,   // unperturbed box sines, closed-form products
    Hermite,    // unperturbed oscillator functions, Gauss-Hermite exact
    Piecewise,  // smooth between breakpoints, Gauss-Legendre per piece
    Grid,       // nodal values, trapezoid on the grid
};

struct GridData {
    std::vector<double> x;
    double dx = 0.0;
    std::vector<std::vector<double>> values;  // per level, normalised so sum psi^2 dx = 1
};

struct OneBodySpectrum {
    std::vector<OneBodyLevel> levels;
    WaveKind kind = WaveKind::None;
    std::vector<std::function<double(double)>> wavefunctions;
    std::vector<double> breakpoints;
    std::optional<GridData> grid;
    double length = 1.0;  // box length (ISW) or 1/sqrt(omega) (harmonic)

    std::vector<double> energies() const {
        std::vector<double> e;
        e.reserve(levels.size());
        for (const auto& l : levels) e.push_back(l.energy);
        return e;
    }
};

namespace detail {

inline void check_n_max(int n_max) {
    if (n_max < 1) throw DomainError("n_max must be at least 1");
}

// Orthonormal oscillator functions psi_n(xi), n = 0..n_max-1, at one point (omega = 1).
inline std::vector<double> hermite_functions(int count, double xi) {
    std::vector<double> h(static_cast<std::size_t>(std::max(count, 1)));
    h[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * xi * xi);
    if (count > 1) h[1] = std::sqrt(2.0) * xi * h[0];
    for (int n = 1; n + 1 < count; ++n)
        h[n + 1] = std::sqrt(2.0 / (n + 1)) * xi * h[n] - std::sqrt(static_cast<double>(n) / (n + 1)) * h[n - 1];
    return h;
}

// Same recurrence without the Gaussian factor; used with Gauss-Hermite nodes.
inline std::vector<double> hermite_polys(int count, double xi) {
    std::vector<double> h(static_cast<std::size_t>(std::max(count, 1)));
    h[0] = std::pow(std::numbers::pi, -0.25);
    if (count > 1) h[1] = std::sqrt(2.0) * xi * h[0];
    for (int n = 1; n + 1 < count; ++n)
        h[n + 1] = std::sqrt(2.0 / (n + 1)) * xi * h[n] - std::sqrt(static_cast<double>(n) / (n + 1)) * h[n - 1];
    return h;
}

inline double hermite_function(int n, double omega, double x) {
    const double xi = std::sqrt(omega) * x;
    return std::pow(omega, 0.25) * hermite_functions(n + 1, xi)[static_cast<std::size_t>(n)];
}

// Finds the single root in [lo, hi]; a zero exactly at hi belongs to the next gap.
template <class F>
double root_in_gap(F&& f, double lo, double hi, int panels = 64) {
    auto roots = scan_roots(f, lo, hi, panels);
    if (!roots.empty() && roots.back() == hi && f(hi) == 0.0) roots.pop_back();
    if (roots.empty()) throw NoConvergence("no root found in interlacing gap");
    return roots.front();
}

inline void append_pairs(OneBodySpectrum& s, const std::vector<double>& energies, int n_max) {
    for (std::size_t m = 0; m < energies.size() && static_cast<int>(s.levels.size()) < n_max; ++m) {
        const int n = static_cast<int>(s.levels.size());
        s.levels.push_back({energies[m], n, Parity::Even, Well::Left, static_cast<int>(m)});
        s.levels.push_back({energies[m], n + 1, Parity::Odd, Well::Right, static_cast<int>(m)});
    }
}

// Merges two single-well spectra (left first on ties) into labelled levels.
inline void merge_wells(OneBodySpectrum& s, const std::vector<double>& left, const std::vector<double>& right,
                        int n_max, std::vector<int>* order = nullptr) {
    std::size_t i = 0, j = 0;
    while (static_cast<int>(s.levels.size()) < n_max && (i < left.size() || j < right.size())) {
        const bool take_left = j >= right.size() || (i < left.size() && left[i] <= right[j]);
        const int n = static_cast<int>(s.levels.size());
        if (take_left) {
            s.levels.push_back({left[i], n, Parity::None, Well::Left, static_cast<int>(i)});
            if (order) order->push_back(static_cast<int>(i));
            ++i;
        } else {
            s.levels.push_back({right[j], n, Parity::None, Well::Right, static_cast<int>(j)});
            if (order) order->push_back(static_cast<int>(j));
            ++j;
        }
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Infinite square well on [-L/2, L/2] with a delta barrier at x = a.

inline OneBodySpectrum solve_isw_split(double L, const BarrierSpec& barrier, int n_max) {
    detail::check_n_max(n_max);
    if (!(L > 0)) throw InvalidGeometry("ISW length must be positive");
    const double a = barrier.offset;
    if (!(std::abs(a) < 0.5 * L)) throw InvalidGeometry("barrier offset must satisfy |a| < L/2");
    const double pi = std::numbers::pi;
    const bool centred = a == 0.0;
    const double l1 = a + 0.5 * L, l2 = 0.5 * L - a;

    OneBodySpectrum s;
    s.length = L;
    const auto box_sine = [L](int n) {
        const double k = (n + 1) * std::numbers::pi / L, c = std::sqrt(2.0 / L);
        return [k, c, L](double x) { return std::abs(x) < 0.5 * L ? c * std::sin(k * (x + 0.5 * L)) : 0.0; };
    };

    if (barrier.strength.is_zero()) {
        s.kind = WaveKind::IswSines;
        for (int n = 0; n < n_max; ++n) {
            const double k = (n + 1) * pi / L;
            const Parity p = centred ? (n % 2 == 0 ? Parity::Even : Parity::Odd) : Parity::None;
            s.levels.push_back({0.5 * k * k, n, p});
            s.wavefunctions.push_back(box_sine(n));
        }
        return s;
    }

    s.kind = WaveKind::Piecewise;
    s.breakpoints = {-0.5 * L, a, 0.5 * L};

    if (barrier.strength.is_infinite()) {
        const auto well_sine = [L](double len, int m, bool left) {
            const double k = (m + 1) * std::numbers::pi / len, c = std::sqrt(2.0 / len);
            return [=](double x) {
                if (left) return (x > -0.5 * L && x < -0.5 * L + len) ? c * std::sin(k * (x + 0.5 * L)) : 0.0;
                return (x < 0.5 * L && x > 0.5 * L - len) ? c * std::sin(k * (0.5 * L - x)) : 0.0;
            };
        };
        if (centred) {
            std::vector<double> e;
            for (int m = 0; 2 * m < n_max; ++m) e.push_back(0.5 * std::pow((m + 1) * pi / l1, 2));
            detail::append_pairs(s, e, n_max + (n_max % 2));
            for (int m = 0; 2 * m < n_max; ++m) {
                auto fl = well_sine(l1, m, true), fr = well_sine(l2, m, false);
                s.wavefunctions.push_back([=](double x) { return (fl(x) + fr(x)) / std::sqrt(2.0); });
                s.wavefunctions.push_back([=](double x) { return (fr(x) - fl(x)) / std::sqrt(2.0); });
            }
            return s;
        }
        std::vector<double> el, er;
        for (int m = 0; m < n_max; ++m) {
            el.push_back(0.5 * std::pow((m + 1) * pi / l1, 2));
            er.push_back(0.5 * std::pow((m + 1) * pi / l2, 2));
        }
        detail::merge_wells(s, el, er, n_max);
        for (const auto& lv : s.levels) s.wavefunctions.push_back(well_sine(lv.well == Well::Left ? l1 : l2, lv.well_index, lv.well == Well::Left));
        return s;
    }

    const double tau = barrier.strength.value();
    if (centred) {
        // Even states: k cos(kL/2) + tau sin(kL/2) = 0; odd states keep their box values.
        const auto even = [&](double k) { return k * std::cos(0.5 * k * L) + tau * std::sin(0.5 * k * L); };
        for (int n = 0; n < n_max; ++n) {
            const int m = n / 2;
            if (n % 2 == 0) {
                const double k = detail::root_in_gap(even, (2 * m + 1) * pi / L, (2 * m + 2) * pi / L);
                s.levels.push_back({0.5 * k * k, n, Parity::Even});
                const double norm = 1.0 / std::sqrt(2.0 * (0.25 * L - std::sin(k * L) / (4.0 * k)));
                s.wavefunctions.push_back([=](double x) {
                    return std::abs(x) < 0.5 * L ? norm * std::sin(k * (0.5 * L - std::abs(x))) : 0.0;
                });
            } else {
                const double k = (2 * m + 2) * pi / L;
                s.levels.push_back({0.5 * k * k, n, Parity::Odd});
                s.wavefunctions.push_back(box_sine(n));
            }
        }
        return s;
    }

    // General offset: k sin(kL) + 2 tau sin(k l1) sin(k l2) = 0, one root per box gap.
    const auto secular = [&](double k) { return k * std::sin(k * L) + 2.0 * tau * std::sin(k * l1) * std::sin(k * l2); };
    for (int n = 0; n < n_max; ++n) {
        const double k = detail::root_in_gap(secular, (n + 1) * pi / L, (n + 2) * pi / L);
        s.levels.push_back({0.5 * k * k, n, Parity::None});
        double A = std::sin(k * l2), B = std::sin(k * l1);
        if (std::abs(A) < 1e-9 && std::abs(B) < 1e-9) {
            s.wavefunctions.push_back(box_sine(static_cast<int>(std::lround(k * L / pi)) - 1));
            continue;
        }
        const double nrm = A * A * (0.5 * l1 - std::sin(2 * k * l1) / (4 * k)) +
                           B * B * (0.5 * l2 - std::sin(2 * k * l2) / (4 * k));
        A /= std::sqrt(nrm);
        B /= std::sqrt(nrm);
        s.wavefunctions.push_back([=](double x) {
            if (!(std::abs(x) < 0.5 * L)) return 0.0;
            return x < a ? A * std::sin(k * (x + 0.5 * L)) : B * std::sin(k * (0.5 * L - x));
        });
    }
    return s;
}

// ---------------------------------------------------------------------------
// Harmonic trap V = omega^2 x^2 / 2 with a delta barrier at x = a.
// In oscillator units E = nu + 1/2; the matching condition at the barrier is
//   -2 sqrt(pi) / Gamma(-nu) = 2 tau D_nu(sqrt2 a) D_nu(-sqrt2 a).

inline double harmonic_secular(double nu, double tau, double a) {
    const double z = std::sqrt(2.0) * a;
    return -2.0 * std::sqrt(std::numbers::pi) * rgamma(-nu) - 2.0 * tau * parabolic_d(nu, z) * parabolic_d(nu, -z);
}

// Even channel at a = 0: 2/Gamma(-nu/2) + tau/Gamma((1-nu)/2) = 0.
inline double harmonic_even_secular(double nu, double tau) {
    return 2.0 * rgamma(-0.5 * nu) + tau * rgamma(0.5 * (1.0 - nu));
}

inline OneBodySpectrum solve_harmonic_split(const BarrierSpec& barrier, int n_max, double omega = 1.0) {
    detail::check_n_max(n_max);
    if (!(omega > 0)) throw DomainError("omega must be positive");
    const double sigma = 1.0 / std::sqrt(omega);
    const double a = barrier.offset / sigma;
    const bool centred = a == 0.0;
    OneBodySpectrum s;
    s.length = sigma;
    const auto energy = [omega](double nu) { return omega * (nu + 0.5); };
    const auto hermite = [omega](int n) { return [n, omega](double x) { return detail::hermite_function(n, omega, x); }; };

    if (barrier.strength.is_zero()) {
        s.kind = WaveKind::Hermite;
        for (int n = 0; n < n_max; ++n) {
            s.levels.push_back({energy(n), n, centred ? (n % 2 == 0 ? Parity::Even : Parity::Odd) : Parity::None});
            s.wavefunctions.push_back(hermite(n));
        }
        return s;
    }

    if (barrier.strength.is_infinite()) {
        if (centred) {
            // Half oscillators: the odd levels, each twice.
            s.kind = WaveKind::Piecewise;
            const double X = sigma * (std::sqrt(2.0 * n_max + 1.0) + 12.0);
            s.breakpoints = {-X, 0.0, X};
            std::vector<double> e;
            for (int m = 0; 2 * m < n_max; ++m) e.push_back(energy(2 * m + 1));
            detail::append_pairs(s, e, n_max + (n_max % 2));
            for (int m = 0; 2 * m < n_max; ++m) {
                auto f = hermite(2 * m + 1);
                s.wavefunctions.push_back([f](double x) { return x < 0 ? -f(x) : f(x); });
                s.wavefunctions.push_back(f);
            }
            return s;
        }
        // Right well keeps D_nu(sqrt2 x) for x > a, left well D_nu(-sqrt2 x).
        const double z = std::sqrt(2.0) * a;
        std::vector<double> el, er;
        for (double hi = n_max + 2.0; static_cast<int>(el.size() + er.size()) < n_max; hi += n_max + 2.0) {
            const int panels = static_cast<int>(64 * hi);
            el = scan_roots([&](double nu) { return parabolic_d(nu, -z); }, 0.0, hi, panels);
            er = scan_roots([&](double nu) { return parabolic_d(nu, z); }, 0.0, hi, panels);
            if (hi > 1e4) throw NoConvergence("harmonic split: too few well levels found");
        }
        for (double& v : el) v = energy(v);
        for (double& v : er) v = energy(v);
        detail::merge_wells(s, el, er, n_max);
        return s;
    }

    const double tau = barrier.strength.value() / (omega * sigma);
    if (centred) {
        for (int n = 0; n < n_max; ++n) {
            const int m = n / 2;
            if (n % 2 == 0) {
                const double nu = detail::root_in_gap([&](double v) { return harmonic_even_secular(v, tau); },
                                                      2.0 * m, 2.0 * m + 1.0);
                s.levels.push_back({energy(nu), n, Parity::Even});
            } else {
                s.levels.push_back({energy(2 * m + 1), n, Parity::Odd});
            }
        }
        return s;
    }
    for (int n = 0; n < n_max; ++n) {
        const double nu = detail::root_in_gap([&](double v) { return harmonic_secular(v, tau, a); }, n, n + 1.0);
        s.levels.push_back({energy(nu), n, Parity::None});
    }
    return s;
}

// ---------------------------------------------------------------------------
// Finite-difference oracle for any symmetric trap.

struct GridOptions {
    std::optional<double> half_extent;  // box is [-X, X]; defaults depend on the trap
    bool richardson = false;            // combine with a half-spacing solve, energies only
};

namespace detail {

inline double default_half_extent(const TrapPotential& trap, int n_max) {
    if (const auto* isw = std::get_if<InfiniteSquareWell>(&trap)) return 0.5 * isw->length;
    if (const auto* h = std::get_if<Harmonic>(&trap)) {
        const double sigma = 1.0 / std::sqrt(h->omega);
        return sigma * std::max(8.0, std::sqrt(2.0 * n_max + 1.0) + 6.0);
    }
    if (const auto* q = std::get_if<Quartic>(&trap))
        return 5.0 * std::pow(q->c, -1.0 / 6.0) * std::max(1.0, std::cbrt((n_max + 1.0) / 24.0));
    return std::get<Tabulated>(trap).x.back();
}

inline bool has_hard_walls(const TrapPotential& trap) {
    if (is_isw(trap)) return true;
    if (const auto* t = std::get_if<Tabulated>(&trap)) return t->hard_walls;
    return false;
}

inline void check_tail(const std::vector<double>& v, bool check_front, bool check_back) {
    double big = 0;
    for (double x : v) big = std::max(big, std::abs(x));
    if ((check_front && std::abs(v.front()) > 1e-8 * big) || (check_back && std::abs(v.back()) > 1e-8 * big))
        throw GridTooSmall("grid too small: eigenfunction tail reaches the box boundary");
}

inline OneBodySpectrum solve_grid_once(const TrapPotential& trap, const BarrierSpec& barrier, int N, int n_max,
                                       double X) {
    const bool hard = has_hard_walls(trap);
    const double h = 2.0 * X / (N + 1);
    const int c = (N - 1) / 2;
    GridData g;
    g.dx = h;
    g.x.resize(static_cast<std::size_t>(N));
    std::vector<double> d(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        g.x[static_cast<std::size_t>(i)] = (i - c) * h;
        const double v = is_isw(trap) ? 0.0 : potential(trap, g.x[static_cast<std::size_t>(i)]);
        d[static_cast<std::size_t>(i)] = 1.0 / (h * h) + v;
    }
    const double off = -0.5 / (h * h);
    const double a = barrier.offset;
    if (!(std::abs(a) < X)) throw InvalidGeometry("barrier offset outside the grid");
    const int j = static_cast<int>(std::lround(a / h)) + c;
    const bool centred = a == 0.0;

    OneBodySpectrum s;
    s.kind = WaveKind::Grid;
    s.length = X;
    const std::size_t Nz = static_cast<std::size_t>(N);
    const double inv_sqrt_h = 1.0 / std::sqrt(h);

    if (!barrier.strength.is_infinite()) {
        if (barrier.strength.is_finite_nonzero()) d[static_cast<std::size_t>(j)] += barrier.strength.value() / h;
        if (n_max > N) throw GridTooSmall("grid has fewer nodes than requested levels");
        const auto eig = tridiagonal_lowest(d, std::vector<double>(Nz - 1, off), static_cast<std::size_t>(n_max));
        for (int n = 0; n < n_max; ++n) {
            const auto& v = eig.vectors[static_cast<std::size_t>(n)];
            if (!hard) check_tail(v, true, true);
            Parity p = Parity::None;
            if (centred) {
                double ov = 0;
                for (std::size_t i = 0; i < Nz; ++i) ov += v[i] * v[Nz - 1 - i];
                if (ov > 1.0 - 1e-8) p = Parity::Even;
                else if (ov < -(1.0 - 1e-8)) p = Parity::Odd;
            }
            s.levels.push_back({eig.values[static_cast<std::size_t>(n)], n, p});
            std::vector<double> psi(v);
            for (double& y : psi) y *= inv_sqrt_h;
            g.values.push_back(std::move(psi));
        }
        s.grid = std::move(g);
        return s;
    }

    // Dirichlet node at j splits the box into two independent problems.
    const std::size_t nl = static_cast<std::size_t>(j), nr = Nz - static_cast<std::size_t>(j) - 1;
    const auto solve_part = [&](std::size_t begin, std::size_t size) {
        if (size < 2) throw GridTooSmall("well too narrow for the grid");
        std::vector<double> dd(d.begin() + static_cast<std::ptrdiff_t>(begin),
                               d.begin() + static_cast<std::ptrdiff_t>(begin + size));
        const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(n_max), size);
        return tridiagonal_lowest(dd, std::vector<double>(size - 1, off), k);
    };
    const auto embed = [&](const std::vector<double>& v, std::size_t begin) {
        std::vector<double> psi(Nz, 0.0);
        for (std::size_t i = 0; i < v.size(); ++i) psi[begin + i] = v[i] * inv_sqrt_h;
        return psi;
    };

    if (centred) {
        const auto right = solve_part(nl + 1, nr);
        std::vector<double> e;
        for (std::size_t m = 0; 2 * m < static_cast<std::size_t>(n_max) && m < right.values.size(); ++m) {
            if (!hard) check_tail(right.vectors[m], false, true);
            e.push_back(right.values[m]);
        }
        append_pairs(s, e, n_max + (n_max % 2));
        for (std::size_t m = 0; m < e.size(); ++m) {
            std::vector<double> r = embed(right.vectors[m], nl + 1), l(Nz, 0.0);
            for (std::size_t i = 0; i < Nz; ++i) l[i] = r[Nz - 1 - i];
            std::vector<double> even(Nz), odd(Nz);
            for (std::size_t i = 0; i < Nz; ++i) {
                even[i] = (l[i] + r[i]) / std::sqrt(2.0);
                odd[i] = (r[i] - l[i]) / std::sqrt(2.0);
            }
            g.values.push_back(std::move(even));
            g.values.push_back(std::move(odd));
        }
        s.grid = std::move(g);
        return s;
    }

    const auto left = solve_part(0, nl);
    const auto right = solve_part(nl + 1, nr);
    std::vector<int> order;
    merge_wells(s, left.values, right.values, n_max, &order);
    for (const auto& lv : s.levels) {
        const auto m = static_cast<std::size_t>(lv.well_index);
        if (lv.well == Well::Left) {
            if (!hard) check_tail(left.vectors[m], true, false);
            g.values.push_back(embed(left.vectors[m], 0));
        } else {
            if (!hard) check_tail(right.vectors[m], false, true);
            g.values.push_back(embed(right.vectors[m], nl + 1));
        }
    }
    s.grid = std::move(g);
    return s;
}

}  // namespace detail

// grid_size is rounded up to an odd count so that x = 0 is a node.
inline OneBodySpectrum solve_grid(const TrapPotential& trap, const BarrierSpec& barrier, int grid_size, int n_max,
                                  const GridOptions& opts = {}) {
    detail::check_n_max(n_max);
    validate(trap);
    if (grid_size < 3) throw DomainError("grid_size must be at least 3");
    const int N = grid_size % 2 == 0 ? grid_size + 1 : grid_size;
    double X = opts.half_extent.value_or(detail::default_half_extent(trap, n_max));
    if (detail::has_hard_walls(trap)) X = detail::default_half_extent(trap, n_max);
    OneBodySpectrum s = detail::solve_grid_once(trap, barrier, N, n_max, X);
    if (opts.richardson) {
        const OneBodySpectrum fine = detail::solve_grid_once(trap, barrier, 2 * N + 1, n_max, X);
        for (std::size_t i = 0; i < s.levels.size(); ++i)
            s.levels[i].energy = (4.0 * fine.levels[i].energy - s.levels[i].energy) / 3.0;
    }
    return s;
}

// Dispatches to the analytic solver when one exists.
inline OneBodySpectrum solve_one_body(const TrapPotential& trap, const BarrierSpec& barrier, int n_max,
                                      int grid_size = 2001) {
    if (const auto* isw = std::get_if<InfiniteSquareWell>(&trap)) return solve_isw_split(isw->length, barrier, n_max);
    if (const auto* h = std::get_if<Harmonic>(&trap)) return solve_harmonic_split(barrier, n_max, h->omega);
    return solve_grid(trap, barrier, grid_size, n_max);
}

// ---------------------------------------------------------------------------
// Six double-well types, by well shapes and reflection symmetries.

enum class WellRelation { Different, Identical, Mirror };

struct DoubleWellGeometry {
    WellRelation relation = WellRelation::Different;
    bool left_symmetric = false;
    bool right_symmetric = false;
    bool global_parity = false;
};

struct CaseClassification {
    int number = 0;
    std::string roman;
    GroupExpr no_tunneling;
    GroupExpr tunneling;
};

inline CaseClassification classify_case(const DoubleWellGeometry& g) {
    const auto make = [](int n, const char* roman, const char* sep, const char* tun) {
        return CaseClassification{n, roman, parse_group(sep), parse_group(tun)};
    };
    const int symmetric = static_cast<int>(g.left_symmetric) + static_cast<int>(g.right_symmetric);
    switch (g.relation) {
        case WellRelation::Different:
            if (g.global_parity) throw InconsistentFlags("globally symmetric but wells declared non-mirror");
            if (symmetric == 0) return make(1, "I", "E", "E");
            if (symmetric == 1) return make(2, "II", "O(1)_a", "E");
            return make(3, "III", "O(1)_a x O(1)_b", "E");
        case WellRelation::Identical:
            if (g.left_symmetric != g.right_symmetric) throw InconsistentFlags("identical wells must share reflection symmetry");
            if (symmetric == 2) {
                if (!g.global_parity) throw InconsistentFlags("identical symmetric wells are mirror images; global parity must hold");
                return make(6, "VI", "O(1) wr W2", "O(1)");
            }
            if (g.global_parity) throw InconsistentFlags("global parity needs mirror-image wells");
            return make(4, "IV", "W2", "E");
        case WellRelation::Mirror:
            if (!g.global_parity) throw InconsistentFlags("mirror-image wells imply global parity");
            if (symmetric == 1) throw InconsistentFlags("the mirror image of a symmetric well is symmetric");
            if (symmetric == 2) return make(6, "VI", "O(1) wr W2", "O(1)");
            return make(5, "V", "W'2", "O(1)");
    }
    throw InconsistentFlags("unknown well relation");
}

}  // namespace splitwell
