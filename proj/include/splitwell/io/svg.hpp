#pragma once

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "splitwell/tracking.hpp"

namespace splitwell::io {

struct DiagramPanel {
    std::string id;
    const SweepResult* sweep = nullptr;
    double x_scale = 1.0;  // compactification p / (p + x_scale), natural coupling units
    std::optional<double> e_min, e_max;  // natural energy units; default from data
};

struct LevelDiagram {
    std::string title;
    std::vector<DiagramPanel> panels;
    int columns = 2;
    double multiplet_tol = 1e-6;
};

// Stroke colours keyed by degeneracy, following the usual level-map convention.
inline const std::map<int, std::string>& stroke_classes() {
    static const std::map<int, std::string> m{{1, "red"}, {2, "blue"}, {3, "green"}, {4, "purple"}, {6, "brown"}, {8, "black"}};
    return m;
}

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream o;
    o << std::fixed << std::setprecision(3) << v;
    return o.str();
}

inline std::string attr(std::string s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '"') out += "&quot;";
        else out += c;
    }
    return out;
}

// Degeneracy a path carries away from the endpoints: the least number of
// paths within tol of it over the interior grid, so isolated touchings don't count.
inline std::vector<int> interior_multiplicity(const SweepResult& r, double tol) {
    const std::size_t n = r.spec.grid.size();
    std::vector<std::size_t> pts;
    for (std::size_t g = 1; g + 1 < n; ++g) pts.push_back(g);
    if (pts.empty()) pts.push_back(0);
    std::vector<int> out;
    for (const auto& p : r.paths) {
        int best = 1 << 30;
        for (std::size_t g : pts) {
            int c = 0;
            for (const auto& q : r.paths) c += splitwell::detail::same_multiplet(q.energies[g], p.energies[g], tol);
            best = std::min(best, c);
        }
        out.push_back(best);
    }
    return out;
}

}  // namespace detail

// One polyline per path; corner levels get a marker with the merge count.
inline std::string emit_level_diagram(const LevelDiagram& d) {
    std::size_t total = 0;
    for (const auto& p : d.panels) {
        if (!p.sweep) throw EmptyInput("emit_level_diagram: panel " + p.id + " has no sweep");
        total += p.sweep->paths.size();
    }
    if (total == 0) throw EmptyInput("emit_level_diagram: no paths");

    const double W = 360, H = 300, ml = 60, mr = 20, mt = 30, mb = 50;
    const int cols = std::max(1, std::min<int>(d.columns, static_cast<int>(d.panels.size())));
    const int rows = static_cast<int>((d.panels.size() + cols - 1) / cols);
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << cols * W << "\" height=\"" << rows * H + 30
      << "\" data-paths=\"" << total << "\">\n";
    o << "<style>polyline{fill:none;stroke-width:1.5}";
    for (const auto& [m, c] : stroke_classes()) o << " .m" << m << "{stroke:" << c << "}";
    o << " .mx{stroke:gray} .corner{fill:black} text{font:11px sans-serif}</style>\n";
    o << "<text x=\"10\" y=\"18\">" << detail::attr(d.title) << "</text>\n";

    for (std::size_t k = 0; k < d.panels.size(); ++k) {
        const auto& pn = d.panels[k];
        const SweepResult& r = *pn.sweep;
        const Units u = natural_units(r.base.trap);
        const double ox = static_cast<double>(k % cols) * W, oy = 30 + static_cast<double>(k / cols) * H;
        const double pw = W - ml - mr, ph = H - mt - mb;
        double lo = 1e300, hi = -1e300;
        for (const auto& p : r.paths) {
            for (double e : p.energies) lo = std::min(lo, e / u.energy), hi = std::max(hi, e / u.energy);
            if (p.corner_energy) hi = std::max(hi, *p.corner_energy / u.energy);
        }
        if (pn.e_min) lo = *pn.e_min;
        if (pn.e_max) hi = *pn.e_max;
        if (!(hi > lo)) hi = lo + 1.0;
        const auto X = [&](double p) { return ox + ml + pw * (p / (p + pn.x_scale)); };
        const auto Y = [&](double e) { return oy + mt + ph * (1.0 - (e - lo) / (hi - lo)); };
        const std::string pname = to_string(r.spec.parameter);

        o << "<g class=\"panel\" data-id=\"" << detail::attr(pn.id) << "\" data-parameter=\"" << pname << "\" data-fixed=\""
          << r.spec.fixed.str() << "\" data-method=\"" << r.method << "\">\n";
        o << "<rect x=\"" << detail::fmt(ox + ml) << "\" y=\"" << detail::fmt(oy + mt) << "\" width=\"" << detail::fmt(pw) << "\" height=\""
          << detail::fmt(ph) << "\" fill=\"none\" stroke=\"#888\"/>\n";
        o << "<text x=\"" << detail::fmt(ox + ml) << "\" y=\"" << detail::fmt(oy + mt - 8) << "\">" << detail::attr(pn.id) << "</text>\n";
        o << "<text class=\"xlabel\" x=\"" << detail::fmt(ox + ml + pw / 2 - 60) << "\" y=\"" << detail::fmt(oy + H - 12) << "\">" << pname
          << " / (" << u.coupling_name << "), axis p/(p+" << detail::fmt(pn.x_scale) << ")</text>\n";
        o << "<text class=\"ylabel\" transform=\"translate(" << detail::fmt(ox + 16) << "," << detail::fmt(oy + mt + ph / 2 + 20)
          << ") rotate(-90)\">E / " << u.energy_name << "</text>\n";
        for (int t = 0; t <= 4; ++t) {
            const double e = lo + (hi - lo) * t / 4.0;
            o << "<text x=\"" << detail::fmt(ox + 22) << "\" y=\"" << detail::fmt(Y(e) + 4) << "\">" << detail::fmt(e) << "</text>\n";
        }
        for (double p : {0.0, 1.0, 10.0}) {
            o << "<text x=\"" << detail::fmt(X(p * pn.x_scale) - 4) << "\" y=\"" << detail::fmt(oy + mt + ph + 14) << "\">"
              << detail::fmt(p * pn.x_scale) << "</text>\n";
        }
        if (r.spec.terminal_infinity)
            o << "<text x=\"" << detail::fmt(ox + ml + pw - 8) << "\" y=\"" << detail::fmt(oy + mt + ph + 14) << "\">inf</text>\n";

        const auto mult = detail::interior_multiplicity(r, d.multiplet_tol);
        for (std::size_t i = 0; i < r.paths.size(); ++i) {
            const auto& p = r.paths[i];
            const std::string cls = stroke_classes().count(mult[i]) ? "m" + std::to_string(mult[i]) : "mx";
            o << "<polyline class=\"" << cls << "\" data-multiplicity=\"" << mult[i] << "\" data-sector=\"" << detail::attr(to_string(p.sector))
              << "\" data-level=\"" << p.index << "\" data-start=\"" << detail::attr(p.start_name) << "\"";
            if (p.corner_energy) {
                const auto& lv = r.corner->levels[static_cast<std::size_t>(*p.corner_level)];
                o << " data-end=\"" << detail::attr(p.end_name) << "\" data-corner-energy=\"" << detail::fmt(*p.corner_energy / u.energy)
                  << "\" data-corner-multiplicity=\"" << lv.multiplicity << "\"";
            }
            o << " points=\"";
            for (std::size_t g = 0; g < p.energies.size(); ++g)
                o << (g ? " " : "") << detail::fmt(X(r.spec.grid[g] / u.coupling)) << "," << detail::fmt(Y(p.energies[g] / u.energy));
            if (p.corner_energy) o << " " << detail::fmt(ox + ml + pw) << "," << detail::fmt(Y(*p.corner_energy / u.energy));
            o << "\"/>\n";
        }
        for (const auto& m : endpoint_merge_report(r))
            o << "<circle class=\"corner\" cx=\"" << detail::fmt(ox + ml + pw) << "\" cy=\"" << detail::fmt(Y(m.corner_energy / u.energy))
              << "\" r=\"2.5\" data-energy=\"" << detail::fmt(m.corner_energy / u.energy) << "\" data-count=\"" << m.count
              << "\" data-multiplicity=\"" << m.multiplicity << "\" data-complete=\"" << (m.complete ? "true" : "false") << "\"/>\n";
        o << "</g>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace splitwell::io
