#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "splitwell/io/config.hpp"
#include "splitwell/io/svg.hpp"

namespace splitwell::io {

inline json model_json(const TwoBodyModel& m) {
    const Units u = natural_units(m.trap);
    json trap = std::visit(
        [](const auto& t) -> json {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, InfiniteSquareWell>) return {{"kind", "isw"}, {"length", t.length}};
            else if constexpr (std::is_same_v<T, Harmonic>) return {{"kind", "harmonic"}, {"omega", t.omega}};
            else if constexpr (std::is_same_v<T, Quartic>) return {{"kind", "quartic"}, {"c", t.c}};
            else return {{"kind", "tabulated"}, {"x", t.x}, {"v", t.v}, {"hard_walls", t.hard_walls}};
        },
        m.trap);
    return {{"trap", trap}, {"tau", coupling_json(m.barrier.strength, u.coupling)}, {"offset", m.barrier.offset / u.length},
            {"gamma", coupling_json(m.gamma, u.coupling)}};
}

namespace detail {

inline void check_format(const RunConfig& c) {
    const Format f = c.output.format;
    const std::string t = task_name(c.task);
    const bool ok = f == Format::Json || (f == Format::Csv && (t == "spectrum" || t == "sweep" || t == "audit")) ||
                    (f == Format::Svg && t == "sweep");
    if (!ok) throw ConfigError("output format " + to_string(f) + " does not apply to a " + t + " task");
}

inline std::string write(const std::filesystem::path& dir, const std::string& name, const std::string& text) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const auto p = dir / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot write " + p.string());
    out << text;
    if (!out) throw IoError("write failed for " + p.string());
    return p.string();
}

inline std::string indexed(const std::string& path, std::size_t k) {
    const std::filesystem::path p(path);
    return (p.parent_path() / (p.stem().string() + "-" + std::to_string(k) + p.extension().string())).string();
}

// The twelve regime cells for one trap: three gamma regimes x {finite, inf} tau x {centred, off-centre}.
inline std::vector<TwoBodyModel> regime_models(const TwoBodyModel& base, const AuditTask& t) {
    const Units u = natural_units(base.trap);
    std::vector<TwoBodyModel> out;
    for (const Coupling tau : {Coupling(u.coupling), Coupling::infinite()})
        for (const Coupling g : {Coupling(0.0), t.gamma, Coupling::infinite()})
            for (const double a : {0.0, t.offset * u.length}) {
                TwoBodyModel m = base;
                m.barrier = {tau, a};
                m.gamma = g;
                out.push_back(m);
            }
    return out;
}

}  // namespace detail

struct RunResult {
    json summary;                     // machine-readable, printed by the CLI
    std::vector<std::string> outputs; // files written, in order
};

inline RunResult run(const RunConfig& c, const std::filesystem::path& out_dir) {
    detail::check_format(c);
    const Units u = natural_units(c.model.trap);
    json doc{{"schema", kSchema}, {"task", task_name(c.task)}, {"units", units_json(u)}, {"model", model_json(c.model)}};
    RunResult r;
    json summary{{"status", "ok"}, {"task", task_name(c.task)}};

    if (const auto* t = std::get_if<SpectrumTask>(&c.task)) {
        const TwoBodySpectrum s = solve_two_body(c.model, t->n_max, t->solve);
        summary["levels"] = s.levels.size();
        summary["method"] = s.method;
        if (c.output.format == Format::Csv) r.outputs.push_back(detail::write(out_dir, c.output.path, spectrum_csv(s, u.energy)));
        else doc["result"] = to_json(s, u.energy);
    } else if (const auto* t = std::get_if<SweepTask>(&c.task)) {
        std::vector<SweepResult> res;
        for (const auto& p : t->panels) res.push_back(sweep(c.model, p.spec, t->n_max, t->options));
        std::size_t paths = 0;
        for (const auto& x : res) paths += x.paths.size();
        summary["panels"] = res.size();
        summary["paths"] = paths;
        if (c.output.format == Format::Svg) {
            LevelDiagram d;
            d.title = c.output.path;
            if (c.output.multiplet_tol > 0) d.multiplet_tol = c.output.multiplet_tol;
            for (std::size_t k = 0; k < res.size(); ++k) d.panels.push_back({t->panels[k].id, &res[k], t->x_scale, {}, {}});
            r.outputs.push_back(detail::write(out_dir, c.output.path, emit_level_diagram(d)));
        } else if (c.output.format == Format::Csv) {
            for (std::size_t k = 0; k < res.size(); ++k)
                r.outputs.push_back(detail::write(out_dir, res.size() == 1 ? c.output.path : detail::indexed(c.output.path, k), paths_csv(res[k])));
        } else {
            json panels = json::array();
            for (std::size_t k = 0; k < res.size(); ++k) {
                json p = to_json(res[k]);
                p["id"] = t->panels[k].id;
                panels.push_back(p);
            }
            doc["result"] = {{"panels", panels}};
        }
    } else if (const auto* t = std::get_if<AuditTask>(&c.task)) {
        std::vector<TwoBodyModel> models = t->all_regimes ? detail::regime_models(c.model, *t) : std::vector{c.model};
        json reports = json::array();
        std::string csv;
        int systematic = 0, total = 0;
        for (const auto& m : models) {
            AuditReport a{predict_degeneracies(m), t->tolerance, {}, 0, 0, 0};
            if (t->n_max > 0) {
                SolveOptions so = t->solve;
                so.ed.solver.multiplet_tol = t->tolerance;
                a = audit(solve_two_body(m, t->n_max, so), a.prediction, t->tolerance);
            }
            systematic += a.systematic;
            total += static_cast<int>(a.entries.size());
            json rep = to_json(a, u.energy);
            rep["model"] = model_json(m);
            reports.push_back(rep);
            csv += csv.empty() ? audit_csv(a, u.energy) : audit_csv(a, u.energy).substr(audit_csv(a, u.energy).find('\n') + 1);
        }
        summary["systematic"] = systematic;
        summary["multiplets"] = total;
        if (c.output.format == Format::Csv) r.outputs.push_back(detail::write(out_dir, c.output.path, csv));
        else doc["result"] = t->all_regimes ? json{{"reports", reports}} : reports.front();
    } else if (const auto* t = std::get_if<AdiabaticTask>(&c.task)) {
        const AdiabaticOutcome a = adiabatic_map(c.model, t->initial, t->ramps);
        summary["norm"] = a.norm;
        doc["result"] = to_json(a, u.energy);
    } else if (const auto* t = std::get_if<GroupTask>(&c.task)) {
        json groups = json::array();
        for (const auto& e : t->expressions) groups.push_back(group_json(e));
        doc["result"] = groups.size() == 1 ? groups.front() : json{{"groups", groups}};
    }
    if (c.output.format == Format::Json) r.outputs.push_back(detail::write(out_dir, c.output.path, doc.dump(2) + "\n"));
    summary["outputs"] = r.outputs;
    r.summary = summary;
    return r;
}

}  // namespace splitwell::io
