#pragma once

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <limits>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "splitwell/error.hpp"

namespace splitwell {

// A non-negative strength that may be the structural infinity.
class Coupling {
public:
    Coupling() = default;
    Coupling(double v) : value_(v) {  // NOLINT: implicit on purpose, finite values read naturally
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("Coupling: finite value must be >= 0");
    }
    static Coupling infinite() {
        Coupling c;
        c.infinite_ = true;
        return c;
    }

    bool is_infinite() const { return infinite_; }
    bool is_zero() const { return !infinite_ && value_ == 0.0; }
    bool is_finite_nonzero() const { return !infinite_ && value_ > 0.0; }
    double value() const {
        if (infinite_) throw DomainError("Coupling: infinite strength has no finite value");
        return value_;
    }
    std::string str() const { return infinite_ ? "inf" : std::to_string(value_); }

    friend bool operator==(const Coupling& a, const Coupling& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }

private:
    double value_ = 0.0;
    bool infinite_ = false;
};

struct InfiniteSquareWell {
    double length = 1.0;
};

// omega sets both the quantum and the oscillator length sigma = omega^{-1/2}.
struct Harmonic {
    double omega = 1.0;
};

struct Quartic {
    double c = 1.0;
};

// Linear interpolation between samples; hard_walls marks the ends as box walls.
struct Tabulated {
    std::vector<double> x;
    std::vector<double> v;
    bool hard_walls = false;
};

using TrapPotential = std::variant<InfiniteSquareWell, Harmonic, Quartic, Tabulated>;

inline double potential(const TrapPotential& trap, double x) {
    return std::visit(
        [x](const auto& t) -> double {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, InfiniteSquareWell>) {
                return std::abs(x) < 0.5 * t.length ? 0.0 : std::numeric_limits<double>::infinity();
            } else if constexpr (std::is_same_v<T, Harmonic>) {
                return 0.5 * t.omega * t.omega * x * x;
            } else if constexpr (std::is_same_v<T, Quartic>) {
                return t.c * x * x * x * x;
            } else {
                if (x <= t.x.front()) return t.v.front();
                if (x >= t.x.back()) return t.v.back();
                auto it = std::upper_bound(t.x.begin(), t.x.end(), x);
                const auto i = static_cast<std::size_t>(it - t.x.begin());
                const double w = (x - t.x[i - 1]) / (t.x[i] - t.x[i - 1]);
                return (1.0 - w) * t.v[i - 1] + w * t.v[i];
            }
        },
        trap);
}

inline void validate(const TrapPotential& trap) {
    if (const auto* isw = std::get_if<InfiniteSquareWell>(&trap)) {
        if (!(isw->length > 0)) throw DomainError("InfiniteSquareWell: length must be positive");
    } else if (const auto* h = std::get_if<Harmonic>(&trap)) {
        if (!(h->omega > 0)) throw DomainError("Harmonic: omega must be positive");
    } else if (const auto* q = std::get_if<Quartic>(&trap)) {
        if (!(q->c > 0)) throw DomainError("Quartic: stiffness must be positive");
    } else {
        const auto& t = std::get<Tabulated>(trap);
        if (t.x.size() < 3 || t.x.size() != t.v.size()) throw DomainError("Tabulated: need >= 3 matching samples");
        for (std::size_t i = 1; i < t.x.size(); ++i)
            if (!(t.x[i] > t.x[i - 1])) throw DomainError("Tabulated: abscissae must ascend");
        const double scale = std::max(std::abs(t.x.front()), std::abs(t.x.back()));
        if (std::abs(t.x.front() + t.x.back()) > 1e-9 * scale)
            throw DomainError("Tabulated: domain must be symmetric about 0");
        // Mirror-check at the samples using interpolation on the other side.
        double vmax = 0;
        for (double v : t.v) vmax = std::max(vmax, std::abs(v));
        for (double xi : t.x)
            if (std::abs(potential(trap, xi) - potential(trap, -xi)) > 1e-6 * std::max(1.0, vmax))
                throw DomainError("Tabulated: potential is not symmetric");
    }
}

inline bool is_isw(const TrapPotential& t) { return std::holds_alternative<InfiniteSquareWell>(t); }
inline bool is_harmonic(const TrapPotential& t) { return std::holds_alternative<Harmonic>(t); }

struct BarrierSpec {
    Coupling strength;
    double offset = 0.0;
};

struct TwoBodyModel {
    TrapPotential trap = InfiniteSquareWell{};
    BarrierSpec barrier;
    Coupling gamma;

    bool at_corner() const {
        const auto corner = [](const Coupling& c) { return c.is_zero() || c.is_infinite(); };
        return corner(barrier.strength) && corner(gamma);
    }
    bool symmetric() const { return barrier.offset == 0.0; }
};

// Natural units of a trap: energies in `energy`, lengths in `length`,
// barrier and contact strengths in `coupling` = energy * length.
struct Units {
    std::string energy_name;
    std::string coupling_name;
    double energy = 1.0;
    double length = 1.0;
    double coupling = 1.0;
};

inline Units natural_units(const TrapPotential& trap) {
    if (const auto* isw = std::get_if<InfiniteSquareWell>(&trap)) {
        const double L = isw->length;
        const double e0 = std::numbers::pi * std::numbers::pi / (2.0 * L * L);
        return {"eps0", "eps0*L", e0, L, e0 * L};
    }
    if (const auto* h = std::get_if<Harmonic>(&trap)) {
        const double sigma = 1.0 / std::sqrt(h->omega);
        return {"hbar*omega", "hbar*omega*sigma", h->omega, sigma, h->omega * sigma};
    }
    return {"natural", "natural", 1.0, 1.0, 1.0};
}

}  // namespace splitwell
