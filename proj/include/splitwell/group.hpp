#pragma once

#include <cctype>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "splitwell/error.hpp"

namespace splitwell {

enum class GroupAtom {
    Trivial,               // E
    Reflection,            // O(1), optionally subscripted
    Dihedral,              // D_j, order 2j
    WellPermutation,       // W_n
    ParticlePermutation,   // P_n
    OrderingPermutation,   // O_n
    Symmetric,             // S_n
    Cyclic,                // Z_n
    TimeTranslation,       // T, T_a, ... continuous
};

struct GroupExpr {
    enum class Kind { Atom, Direct, Wreath };
    Kind kind = Kind::Atom;
    GroupAtom atom = GroupAtom::Trivial;
    int n = 1;              // index for D, W, P, O, S, Z
    std::string decoration; // subscript letter or prime, bookkeeping only
    std::vector<GroupExpr> children;
    // True when the text mixed × and ≀ without parentheses, so the
    // wreath-first precedence rule decided the grouping.
    bool precedence_applied = false;
    bool parenthesized = false;
};

struct GroupOrder {
    std::uint64_t order = 1;
    bool continuous = false;
};

namespace detail {

class GroupParser {
public:
    explicit GroupParser(std::string_view s) : s_(s) {}

    GroupExpr parse() {
        GroupExpr g = parse_direct();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        g.precedence_applied = mixed_;
        return g;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
    bool mixed_ = false;

    [[noreturn]] void fail(const std::string& what) const {
        throw MalformedExpression("group expression '" + std::string(s_) + "': " + what + " at offset " +
                                  std::to_string(pos_));
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(std::string_view tok) {
        skip_ws();
        if (s_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    bool eat_word(std::string_view w) {
        skip_ws();
        if (s_.substr(pos_, w.size()) != w) return false;
        const std::size_t end = pos_ + w.size();
        if (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) return false;
        pos_ = end;
        return true;
    }
    bool eat_direct() { return eat("×") || eat("*") || eat_word("x"); }
    bool eat_wreath() { return eat("≀") || eat_word("wr"); }

    GroupExpr parse_direct() {
        GroupExpr first = parse_wreath();
        std::vector<GroupExpr> factors;
        factors.push_back(std::move(first));
        while (eat_direct()) factors.push_back(parse_wreath());
        if (factors.size() == 1) return std::move(factors.front());
        for (const auto& f : factors)
            if (f.kind == GroupExpr::Kind::Wreath && !f.parenthesized) mixed_ = true;
        GroupExpr g;
        g.kind = GroupExpr::Kind::Direct;
        g.children = std::move(factors);
        return g;
    }

    // Left-associative chain.
    GroupExpr parse_wreath() {
        GroupExpr lhs = parse_primary();
        while (eat_wreath()) {
            GroupExpr rhs = parse_primary();
            GroupExpr g;
            g.kind = GroupExpr::Kind::Wreath;
            g.children.push_back(std::move(lhs));
            g.children.push_back(std::move(rhs));
            lhs = std::move(g);
        }
        return lhs;
    }

    GroupExpr parse_primary() {
        skip_ws();
        if (eat("(")) {
            GroupExpr g = parse_direct();
            if (!eat(")")) fail("missing ')'");
            g.parenthesized = true;
            return g;
        }
        return parse_atom();
    }

    int parse_index() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an index");
        const int n = std::stoi(std::string(s_.substr(start, pos_ - start)));
        if (n < 1) fail("index must be positive");
        return n;
    }

    std::string parse_decoration() {
        std::string deco;
        if (pos_ < s_.size() && s_[pos_] == '\'') {
            deco += '\'';
            ++pos_;
        }
        return deco;
    }

    GroupExpr parse_atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("expected a group");
        const char c = s_[pos_];
        GroupExpr g;
        g.kind = GroupExpr::Kind::Atom;
        ++pos_;
        switch (c) {
            case 'E': g.atom = GroupAtom::Trivial; break;
            case 'T':
                g.atom = GroupAtom::TimeTranslation;
                if (pos_ < s_.size() && s_[pos_] == '_') {
                    ++pos_;
                    if (pos_ >= s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_]))) fail("bad T subscript");
                    g.decoration = std::string(1, s_[pos_++]);
                }
                return g;
            case 'O':
                if (s_.substr(pos_, 3) == "(1)") {
                    pos_ += 3;
                    g.atom = GroupAtom::Reflection;
                    g.n = 1;
                    if (pos_ < s_.size() && s_[pos_] == '_') {
                        ++pos_;
                        if (pos_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_])))
                            fail("bad O(1) subscript");
                        g.decoration = std::string(1, s_[pos_++]);
                    }
                    return g;
                }
                g.atom = GroupAtom::OrderingPermutation;
                break;
            case 'D': g.atom = GroupAtom::Dihedral; break;
            case 'W': g.atom = GroupAtom::WellPermutation; break;
            case 'P': g.atom = GroupAtom::ParticlePermutation; break;
            case 'S': g.atom = GroupAtom::Symmetric; break;
            case 'Z': g.atom = GroupAtom::Cyclic; break;
            default: --pos_; fail("unknown group symbol");
        }
        if (g.atom == GroupAtom::Trivial) return g;
        g.decoration = parse_decoration();
        if (pos_ < s_.size() && s_[pos_] == '_') ++pos_;
        g.n = parse_index();
        return g;
    }
};

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        throw MalformedExpression("group order overflows 64 bits");
    return a * b;
}

inline std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f = checked_mul(f, static_cast<std::uint64_t>(i));
    return f;
}

// Number of points a permutation group acts on, if it is one.
inline std::optional<int> permutation_degree(const GroupExpr& g) {
    if (g.kind == GroupExpr::Kind::Atom) {
        switch (g.atom) {
            case GroupAtom::WellPermutation:
            case GroupAtom::ParticlePermutation:
            case GroupAtom::OrderingPermutation:
            case GroupAtom::Symmetric:
            case GroupAtom::Cyclic: return g.n;
            case GroupAtom::Trivial: return 1;
            default: return std::nullopt;
        }
    }
    if (g.kind == GroupExpr::Kind::Wreath) {
        // Imprimitive action of G wr H on deg(G) * deg(H) points.
        const auto inner = permutation_degree(g.children[0]);
        const auto outer = permutation_degree(g.children[1]);
        if (inner && outer) return *inner * *outer;
    }
    return std::nullopt;
}

}  // namespace detail

// Grammar: direct := wreath (('×'|'x'|'*') wreath)*; wreath := primary (('≀'|'wr') primary)*.
inline GroupExpr parse_group(std::string_view text) { return detail::GroupParser(text).parse(); }

inline GroupOrder group_order(const GroupExpr& g) {
    switch (g.kind) {
        case GroupExpr::Kind::Atom:
            switch (g.atom) {
                case GroupAtom::Trivial: return {1, false};
                case GroupAtom::Reflection: return {2, false};
                case GroupAtom::Dihedral: return {2ull * static_cast<std::uint64_t>(g.n), false};
                case GroupAtom::Cyclic: return {static_cast<std::uint64_t>(g.n), false};
                case GroupAtom::TimeTranslation: return {1, true};
                default: return {detail::factorial(g.n), false};
            }
        case GroupExpr::Kind::Direct: {
            GroupOrder out;
            for (const auto& c : g.children) {
                const GroupOrder o = group_order(c);
                out.order = detail::checked_mul(out.order, o.order);
                out.continuous = out.continuous || o.continuous;
            }
            return out;
        }
        case GroupExpr::Kind::Wreath: {
            const auto degree = detail::permutation_degree(g.children[1]);
            if (!degree) throw MalformedExpression("right factor of a wreath product must be a permutation group");
            const GroupOrder base = group_order(g.children[0]);
            const GroupOrder top = group_order(g.children[1]);
            GroupOrder out{top.order, base.continuous || top.continuous};
            for (int i = 0; i < *degree; ++i) out.order = detail::checked_mul(out.order, base.order);
            return out;
        }
    }
    throw MalformedExpression("corrupt expression tree");
}

inline GroupOrder group_order(std::string_view text) { return group_order(parse_group(text)); }

inline std::string to_string(const GroupExpr& g) {
    switch (g.kind) {
        case GroupExpr::Kind::Atom: {
            const std::string idx = std::to_string(g.n);
            switch (g.atom) {
                case GroupAtom::Trivial: return "E";
                case GroupAtom::Reflection: return g.decoration.empty() ? "O(1)" : "O(1)_" + g.decoration;
                case GroupAtom::Dihedral: return "D" + g.decoration + idx;
                case GroupAtom::WellPermutation: return "W" + g.decoration + idx;
                case GroupAtom::ParticlePermutation: return "P" + g.decoration + idx;
                case GroupAtom::OrderingPermutation: return "O" + g.decoration + idx;
                case GroupAtom::Symmetric: return "S" + g.decoration + idx;
                case GroupAtom::Cyclic: return "Z" + g.decoration + idx;
                case GroupAtom::TimeTranslation: return g.decoration.empty() ? "T" : "T_" + g.decoration;
            }
            break;
        }
        case GroupExpr::Kind::Direct: {
            std::string s;
            for (std::size_t i = 0; i < g.children.size(); ++i) {
                if (i) s += " x ";
                s += to_string(g.children[i]);
            }
            return s;
        }
        case GroupExpr::Kind::Wreath: {
            const auto wrap = [](const GroupExpr& c) {
                return c.kind == GroupExpr::Kind::Atom ? to_string(c) : "(" + to_string(c) + ")";
            };
            const auto& l = g.children[0];
            const std::string left = l.kind == GroupExpr::Kind::Wreath ? to_string(l) : wrap(l);
            return left + " wr " + wrap(g.children[1]);
        }
    }
    return {};
}

}  // namespace splitwell
