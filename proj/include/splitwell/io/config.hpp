#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "splitwell/io/serialize.hpp"

namespace splitwell::io {

enum class Format { Json, Csv, Svg };

inline std::string to_string(Format f) { return f == Format::Json ? "json" : f == Format::Csv ? "csv" : "svg"; }

struct SpectrumTask {
    int n_max = 8;
    SolveOptions solve;
};

struct PanelSpec {
    std::string id;
    SweepSpec spec;  // grid in raw units after parsing
};

struct SweepTask {
    int n_max = 8;
    std::vector<PanelSpec> panels;
    double x_scale = 1.0;
    SweepOptions options;
};

struct AuditTask {
    int n_max = 12;
    double tolerance = 1e-6;
    SolveOptions solve;
    bool all_regimes = false;  // six regimes x {centred, off-centre}
    double offset = 0.3;       // natural length, used by all_regimes
    Coupling gamma = 1.0;      // finite interaction used by all_regimes, raw units
};

struct AdiabaticTask {
    std::string initial;
    std::vector<SweepParameter> ramps;
};

struct GroupTask {
    std::vector<std::string> expressions;
};

using Task = std::variant<SpectrumTask, SweepTask, AuditTask, AdiabaticTask, GroupTask>;

inline std::string task_name(const Task& t) {
    static const char* names[] = {"spectrum", "sweep", "audit", "adiabatic", "group"};
    return names[t.index()];
}

struct OutputSpec {
    Format format = Format::Json;
    std::string path;
    double multiplet_tol = 0.0;  // 0 keeps each solver's default
};

struct RunConfig {
    std::string units;
    TwoBodyModel model;
    Task task;
    OutputSpec output;
};

namespace detail {

inline void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) throw ConfigError("unknown key \"" + k + "\" in " + where);
}

inline const json& need(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError("missing \"" + key + "\" in " + where);
    return j.at(key);
}

inline double number(const json& j, const std::string& what) {
    if (!j.is_number()) throw ConfigError(what + " must be a number");
    return j.get<double>();
}

inline int count(const json& j, const std::string& what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw ConfigError(what + " must be a non-negative integer");
    return j.get<int>();
}

inline TrapPotential parse_trap(const json& j) {
    const std::string kind = need(j, "kind", "model.trap").get<std::string>();
    if (kind == "isw") {
        only_keys(j, {"kind", "length"}, "model.trap");
        return InfiniteSquareWell{j.contains("length") ? number(j["length"], "trap.length") : 1.0};
    }
    if (kind == "harmonic") {
        only_keys(j, {"kind", "omega"}, "model.trap");
        return Harmonic{j.contains("omega") ? number(j["omega"], "trap.omega") : 1.0};
    }
    if (kind == "quartic") {
        only_keys(j, {"kind", "c"}, "model.trap");
        return Quartic{j.contains("c") ? number(j["c"], "trap.c") : 1.0};
    }
    if (kind == "tabulated") {
        only_keys(j, {"kind", "x", "v", "hard_walls"}, "model.trap");
        Tabulated t;
        t.x = need(j, "x", "model.trap").get<std::vector<double>>();
        t.v = need(j, "v", "model.trap").get<std::vector<double>>();
        t.hard_walls = j.value("hard_walls", false);
        return t;
    }
    throw ConfigError("unknown trap kind \"" + kind + "\"");
}

inline SweepParameter parse_parameter(const json& j) {
    const std::string s = j.get<std::string>();
    if (s == "tau") return SweepParameter::Tau;
    if (s == "gamma") return SweepParameter::Gamma;
    throw ConfigError("sweep parameter must be \"tau\" or \"gamma\", got \"" + s + "\"");
}

inline SolveOptions parse_solve(const json& j, SolveOptions o) {
    if (j.contains("method")) {
        try {
            o.method = parse_method(j["method"].get<std::string>());
        } catch (const Error& e) {
            throw ConfigError(e.what());
        }
    }
    if (j.contains("basis_size")) o.basis_size = count(j["basis_size"], "basis_size");
    if (j.contains("extrapolate")) o.ed.extrapolate = j["extrapolate"].get<bool>();
    if (j.contains("grid_size")) o.ed.solver.grid_size = count(j["grid_size"], "grid_size");
    return o;
}

inline Task parse_task(const json& j, const Units& u, double multiplet_tol) {
    const std::string kind = need(j, "kind", "task").get<std::string>();
    SolveOptions base;
    base.ed.solver.multiplet_tol = multiplet_tol;
    if (kind == "spectrum") {
        only_keys(j, {"kind", "n_max", "method", "basis_size", "extrapolate", "grid_size"}, "task");
        return SpectrumTask{count(need(j, "n_max", "task"), "n_max"), parse_solve(j, base)};
    }
    if (kind == "sweep") {
        only_keys(j, {"kind", "n_max", "panels", "x_scale", "method", "basis_size", "grid_size"}, "task");
        SweepTask t;
        t.n_max = count(need(j, "n_max", "task"), "n_max");
        t.x_scale = j.contains("x_scale") ? number(j["x_scale"], "x_scale") : 1.0;
        t.options.solve = parse_solve(j, base);
        const json& ps = need(j, "panels", "task");
        if (!ps.is_array() || ps.empty()) throw ConfigError("task.panels must be a non-empty array");
        for (const auto& p : ps) {
            only_keys(p, {"id", "parameter", "fixed", "grid", "terminal"}, "task.panels[]");
            PanelSpec s;
            s.id = need(p, "id", "panel").get<std::string>();
            s.spec.parameter = parse_parameter(need(p, "parameter", "panel"));
            s.spec.fixed = parse_coupling(need(p, "fixed", "panel"), u.coupling);
            for (const auto& g : need(p, "grid", "panel")) s.spec.grid.push_back(number(g, "grid value") * u.coupling);
            if (p.contains("terminal")) {
                if (p["terminal"] != "inf" && !p["terminal"].is_null()) throw ConfigError("panel terminal must be \"inf\" or null");
                s.spec.terminal_infinity = p["terminal"] == "inf";
            }
            t.panels.push_back(std::move(s));
        }
        return t;
    }
    if (kind == "audit") {
        only_keys(j, {"kind", "n_max", "tolerance", "method", "basis_size", "grid_size", "all_regimes", "offset", "gamma"}, "task");
        AuditTask t;
        t.n_max = count(need(j, "n_max", "task"), "n_max");
        if (j.contains("tolerance")) t.tolerance = number(j["tolerance"], "tolerance");
        t.solve = parse_solve(j, base);
        t.all_regimes = j.value("all_regimes", false);
        if (j.contains("offset")) t.offset = number(j["offset"], "offset");
        if (j.contains("gamma")) t.gamma = parse_coupling(j["gamma"], u.coupling);
        else t.gamma = Coupling(u.coupling);
        return t;
    }
    if (kind == "adiabatic") {
        only_keys(j, {"kind", "initial", "ramps"}, "task");
        AdiabaticTask t;
        t.initial = need(j, "initial", "task").get<std::string>();
        for (const auto& r : need(j, "ramps", "task")) t.ramps.push_back(parse_parameter(r));
        return t;
    }
    if (kind == "group") {
        only_keys(j, {"kind", "expression", "expressions"}, "task");
        GroupTask t;
        if (j.contains("expression")) t.expressions.push_back(j["expression"].get<std::string>());
        if (j.contains("expressions")) for (const auto& e : j["expressions"]) t.expressions.push_back(e.get<std::string>());
        if (t.expressions.empty()) throw ConfigError("group task needs \"expression\" or \"expressions\"");
        return t;
    }
    throw ConfigError("unknown task kind \"" + kind + "\"");
}

}  // namespace detail

// Strict parse: unknown keys, missing units or a unit that does not belong to
// the trap are all configuration errors.
inline RunConfig parse_config(const json& j) {
    try {
        detail::only_keys(j, {"schema", "units", "model", "task", "output"}, "config");
        if (j.contains("schema") && j["schema"] != kSchema) throw ConfigError("unsupported schema " + j["schema"].dump());
        RunConfig c;
        c.units = detail::need(j, "units", "config").get<std::string>();
        const json& m = detail::need(j, "model", "config");
        detail::only_keys(m, {"trap", "tau", "offset", "gamma"}, "model");
        c.model.trap = detail::parse_trap(detail::need(m, "trap", "model"));
        const Units u = natural_units(c.model.trap);
        if (c.units != u.coupling_name && c.units != u.energy_name)
            throw ConfigError("units \"" + c.units + "\" do not match the trap; expected \"" + u.coupling_name + "\"");
        c.model.barrier.strength = m.contains("tau") ? parse_coupling(m["tau"], u.coupling) : Coupling(0.0);
        c.model.barrier.offset = m.contains("offset") ? detail::number(m["offset"], "offset") * u.length : 0.0;
        c.model.gamma = m.contains("gamma") ? parse_coupling(m["gamma"], u.coupling) : Coupling(0.0);

        const json& o = detail::need(j, "output", "config");
        detail::only_keys(o, {"format", "path", "tolerances"}, "output");
        const std::string f = detail::need(o, "format", "output").get<std::string>();
        if (f == "json") c.output.format = Format::Json;
        else if (f == "csv") c.output.format = Format::Csv;
        else if (f == "svg") c.output.format = Format::Svg;
        else throw ConfigError("output.format must be json, csv or svg");
        c.output.path = detail::need(o, "path", "output").get<std::string>();
        if (o.contains("tolerances")) {
            detail::only_keys(o["tolerances"], {"multiplet"}, "output.tolerances");
            c.output.multiplet_tol = o["tolerances"].value("multiplet", 0.0);
        }
        c.task = detail::parse_task(detail::need(j, "task", "config"), u, c.output.multiplet_tol);
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const DomainError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config " + path + ": " + e.what());
    }
    return parse_config(j);
}

}  // namespace splitwell::io
