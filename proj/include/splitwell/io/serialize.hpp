#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "splitwell/group.hpp"
#include "splitwell/symmetry.hpp"
#include "splitwell/tracking.hpp"

namespace splitwell::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "splitwell/1";

// Energies and couplings are written divided by the model's natural unit.
// Parsing returns values in that unit; the caller owns the conversion back.

inline json coupling_json(const Coupling& c, double unit = 1.0) {
    if (c.is_infinite()) return "inf";
    return c.value() / unit;
}

inline Coupling parse_coupling(const json& j, double unit = 1.0) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return Coupling::infinite();
        throw ConfigError("coupling strings must be the token \"inf\", got \"" + j.get<std::string>() + "\"");
    }
    if (!j.is_number()) throw ConfigError("coupling must be a number or \"inf\"");
    const double v = j.get<double>();
    if (!(v >= 0) || !std::isfinite(v)) throw ConfigError("coupling must be finite and >= 0, or \"inf\"");
    return Coupling(v * unit);
}

inline json units_json(const Units& u) {
    return {{"energy", u.energy_name}, {"coupling", u.coupling_name}, {"energy_value", u.energy}, {"length_value", u.length},
            {"coupling_value", u.coupling}};
}

inline std::string sector_str(const SectorLabel& s) { return to_string(s); }

inline SectorLabel parse_sector(const std::string& s) {
    SectorLabel l;
    std::string rest;
    if (s.rfind("[2]", 0) == 0) { l.exchange = Exchange::Symmetric; rest = s.substr(3); }
    else if (s.rfind("[1^2]", 0) == 0) { l.exchange = Exchange::Antisymmetric; rest = s.substr(5); }
    else throw UnsupportedFormat("unknown sector \"" + s + "\"");
    if (rest == "+") l.parity = Parity::Even;
    else if (rest == "-") l.parity = Parity::Odd;
    else if (rest.empty()) l.parity = Parity::None;
    else throw UnsupportedFormat("unknown sector \"" + s + "\"");
    return l;
}

// ---------------------------------------------------------------------------
// Spectrum

inline json to_json(const TwoBodyMember& m, double e_unit) {
    json j{{"energy", m.energy / e_unit}, {"sector", sector_str(m.label)}, {"name", m.name}, {"key", m.key}, {"wells", m.wells}};
    j["composition"] = m.composition ? json::array({m.composition->n1, m.composition->n2}) : json(nullptr);
    return j;
}

inline json to_json(const TwoBodySpectrum& s, double e_unit) {
    json levels = json::array();
    for (const auto& l : s.levels) {
        json mem = json::array();
        for (const auto& m : l.members) mem.push_back(to_json(m, e_unit));
        const IrrepArray a = l.irreps();
        levels.push_back({{"energy", l.energy / e_unit}, {"multiplicity", l.multiplicity}, {"irreps", a.str()}, {"members", mem}});
    }
    json j{{"method", s.method}, {"multiplet_tol", s.multiplet_tol}, {"levels", levels}};
    if (s.convergence) {
        const auto& c = *s.convergence;
        j["convergence"] = {{"basis_size", c.basis_size}, {"half_basis_size", c.half_basis_size}, {"max_change", c.max_change / e_unit},
                            {"extrapolated", c.extrapolated}, {"fit_points", c.fit_points}, {"fit_degree", c.fit_degree}};
    } else {
        j["convergence"] = nullptr;
    }
    return j;
}

inline TwoBodySpectrum spectrum_from_json(const json& j) {
    TwoBodySpectrum s;
    s.method = j.at("method").get<std::string>();
    s.multiplet_tol = j.at("multiplet_tol").get<double>();
    for (const auto& l : j.at("levels")) {
        TwoBodyLevel lv;
        lv.energy = l.at("energy").get<double>();
        lv.multiplicity = l.at("multiplicity").get<int>();
        for (const auto& m : l.at("members")) {
            TwoBodyMember t;
            t.energy = m.at("energy").get<double>();
            t.label = parse_sector(m.at("sector").get<std::string>());
            t.name = m.at("name").get<std::string>();
            t.key = m.at("key").get<std::string>();
            t.wells = m.at("wells").get<std::string>();
            if (!m.at("composition").is_null()) t.composition = Composition(m["composition"][0].get<int>(), m["composition"][1].get<int>());
            lv.members.push_back(std::move(t));
        }
        s.levels.push_back(std::move(lv));
    }
    if (!j.at("convergence").is_null()) {
        const auto& c = j["convergence"];
        ConvergenceReport r;
        r.basis_size = c.at("basis_size").get<int>();
        r.half_basis_size = c.at("half_basis_size").get<int>();
        r.max_change = c.at("max_change").get<double>();
        r.extrapolated = c.at("extrapolated").get<bool>();
        r.fit_points = c.at("fit_points").get<int>();
        r.fit_degree = c.at("fit_degree").get<int>();
        s.convergence = r;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Sweeps

inline json to_json(const SweepResult& r) {
    const Units u = natural_units(r.base.trap);
    json grid = json::array();
    for (double g : r.spec.grid) grid.push_back(g / u.coupling);
    json paths = json::array();
    for (const auto& p : r.paths) {
        json e = json::array();
        for (double x : p.energies) e.push_back(x / u.energy);
        json q{{"sector", sector_str(p.sector)}, {"level", p.index}, {"key", p.key}, {"start", p.start_name}, {"end", p.end_name},
               {"energies", e}};
        q["corner_energy"] = p.corner_energy ? json(*p.corner_energy / u.energy) : json(nullptr);
        q["corner_multiplicity"] = p.corner_level && r.corner ? json(r.corner->levels[static_cast<std::size_t>(*p.corner_level)].multiplicity)
                                                              : json(nullptr);
        paths.push_back(q);
    }
    json merges = json::array();
    for (const auto& m : endpoint_merge_report(r))
        merges.push_back({{"corner_energy", m.corner_energy / u.energy}, {"count", m.count}, {"multiplicity", m.multiplicity}, {"complete", m.complete}});
    const CrossingReport c = crossing_report(r);
    return {{"parameter", to_string(r.spec.parameter)},
            {"fixed", coupling_json(r.spec.fixed, u.coupling)},
            {"method", r.method},
            {"grid", grid},
            {"terminal", r.spec.terminal_infinity ? json("inf") : json(nullptr)},
            {"paths", paths},
            {"merges", merges},
            {"crossings", {{"within_sector", c.within_sector}, {"unlabelled", c.within_conserved}, {"pairs", c.pairs}}}};
}

// One row per grid point per path, plus an "inf" row for attached paths.
inline std::string paths_csv(const SweepResult& r) {
    const Units u = natural_units(r.base.trap);
    std::ostringstream o;
    o.precision(17);
    o << "param,sector,level,energy\n";
    for (const auto& p : r.paths) {
        for (std::size_t g = 0; g < p.energies.size(); ++g)
            o << r.spec.grid[g] / u.coupling << ',' << sector_str(p.sector) << ',' << p.index << ',' << p.energies[g] / u.energy << '\n';
        if (p.corner_energy) o << "inf," << sector_str(p.sector) << ',' << p.index << ',' << *p.corner_energy / u.energy << '\n';
    }
    return o.str();
}

inline std::string spectrum_csv(const TwoBodySpectrum& s, double e_unit) {
    std::ostringstream o;
    o.precision(17);
    o << "level,energy,multiplicity,sector,name\n";
    for (std::size_t l = 0; l < s.levels.size(); ++l)
        for (const auto& m : s.levels[l].members)
            o << l << ',' << m.energy / e_unit << ',' << s.levels[l].multiplicity << ',' << sector_str(m.label) << ',' << m.name << '\n';
    return o.str();
}

// ---------------------------------------------------------------------------
// Symmetry and group payloads

inline json to_json(const DegeneracyPrediction& p) {
    return {{"allowed", json(std::vector<int>(p.allowed.begin(), p.allowed.end()))}, {"row", p.row}, {"col", p.col}};
}

inline DegeneracyPrediction prediction_from_json(const json& j) {
    DegeneracyPrediction p;
    for (int a : j.at("allowed")) p.allowed.insert(a);
    p.row = j.at("row").get<std::string>();
    p.col = j.at("col").get<std::string>();
    return p;
}

inline json to_json(const AuditReport& r, double e_unit) {
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"energy", e.energy / e_unit}, {"multiplicity", e.multiplicity}, {"verdict", to_string(e.verdict)}});
    return {{"prediction", to_json(r.prediction)}, {"tol", r.tol}, {"entries", entries},
            {"counts", {{"systematic", r.systematic}, {"accidental", r.accidental}, {"split", r.split}}}};
}

inline AuditReport audit_from_json(const json& j) {
    AuditReport r;
    r.prediction = prediction_from_json(j.at("prediction"));
    r.tol = j.at("tol").get<double>();
    for (const auto& e : j.at("entries")) {
        const std::string v = e.at("verdict").get<std::string>();
        const Verdict verdict = v == "systematic" ? Verdict::Systematic : v == "split" ? Verdict::Split : Verdict::Accidental;
        r.entries.push_back({e.at("energy").get<double>(), e.at("multiplicity").get<int>(), verdict});
    }
    r.systematic = j.at("counts").at("systematic").get<int>();
    r.accidental = j.at("counts").at("accidental").get<int>();
    r.split = j.at("counts").at("split").get<int>();
    return r;
}

inline std::string audit_csv(const AuditReport& r, double e_unit) {
    std::ostringstream o;
    o.precision(17);
    o << "energy,multiplicity,verdict\n";
    for (const auto& e : r.entries) o << e.energy / e_unit << ',' << e.multiplicity << ',' << to_string(e.verdict) << '\n';
    return o.str();
}

inline json group_json(const std::string& text) {
    const GroupExpr g = parse_group(text);
    const GroupOrder o = group_order(g);
    json j{{"expression", text}, {"parsed", to_string(g)}, {"continuous", o.continuous}, {"precedence_applied", g.precedence_applied}};
    j["order"] = o.continuous ? json(nullptr) : json(o.order);
    return j;
}

inline json to_json(const AdiabaticOutcome& a, double e_unit) {
    json ramps = json::array();
    for (auto r : a.ramps) ramps.push_back(to_string(r));
    json fin = json::array();
    for (const auto& x : a.final)
        fin.push_back({{"label", x.label}, {"sector", sector_str(x.sector)}, {"energy", x.energy / e_unit}, {"amplitude", x.amplitude},
                       {"weight", x.amplitude * x.amplitude}});
    return {{"initial", a.initial}, {"ramps", ramps}, {"final", fin}, {"norm", a.norm}};
}

}  // namespace splitwell::io
