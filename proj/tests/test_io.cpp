#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "splitwell/io.hpp"

using namespace splitwell;
using io::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("splitwell_io_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

json base_config() {
    return json::parse(R"({
      "units": "eps0*L",
      "model": {"trap": {"kind": "isw", "length": 1.0}, "tau": 0, "offset": 0, "gamma": 0},
      "task": {"kind": "spectrum", "n_max": 8},
      "output": {"format": "json", "path": "out.json"}
    })");
}

TwoBodyModel isw() { return {InfiniteSquareWell{1.0}, {0.0, 0.0}, 0.0}; }

int count(const std::string& s, const std::string& needle) {
    int n = 0;
    for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
}

}  // namespace

TEST(Serialize, SpectrumJsonRoundTrip) {
    for (const auto& m : {isw(), TwoBodyModel{Harmonic{1.0}, {Coupling::infinite(), 0.0}, Coupling::infinite()}}) {
        const double e = natural_units(m.trap).energy;
        const auto s = solve_two_body(m, 6);
        const json a = io::to_json(s, e);
        const auto back = io::spectrum_from_json(json::parse(a.dump()));
        EXPECT_EQ(io::to_json(back, 1.0).dump(), a.dump());
        ASSERT_EQ(back.levels.size(), s.levels.size());
        for (std::size_t l = 0; l < s.levels.size(); ++l) {
            EXPECT_DOUBLE_EQ(back.levels[l].energy * e, s.levels[l].energy);
            EXPECT_EQ(back.levels[l].irreps(), s.levels[l].irreps());
            EXPECT_EQ(back.levels[l].members.size(), s.levels[l].members.size());
        }
    }
}

TEST(Serialize, EdConvergenceRoundTrip) {
    const auto s = solve_two_body({Harmonic{1.0}, {0.0, 0.0}, 1.0}, 3, SolveOptions{Method::Ed, 60, {}});
    ASSERT_TRUE(s.convergence);
    const json a = io::to_json(s, 1.0);
    EXPECT_EQ(io::to_json(io::spectrum_from_json(a), 1.0).dump(), a.dump());
}

TEST(Serialize, PredictionMatchesTableCell) {
    const auto p = predict_degeneracies(TauRegime::Infinite, GammaRegime::Zero, true);
    EXPECT_EQ(io::to_json(p).dump(), R"({"allowed":[4,8],"row":"H^inf_0","col":"a=0"})");
    EXPECT_EQ(io::to_json(io::prediction_from_json(io::to_json(p))).dump(), io::to_json(p).dump());
}

TEST(Serialize, AuditRoundTrip) {
    const auto s = solve_two_body({InfiniteSquareWell{1.0}, {Coupling::infinite(), 0.0}, 0.0}, 5);
    const auto r = audit(s, predict_degeneracies(TauRegime::Infinite, GammaRegime::Zero, true), 1e-8);
    const json a = io::to_json(r, 1.0);
    EXPECT_EQ(io::to_json(io::audit_from_json(a), 1.0).dump(), a.dump());
}

TEST(Serialize, PathCsvHeaderAndRows) {
    const auto m = isw();
    const auto r = sweep(m, SweepSpec{SweepParameter::Tau, 0.0, {0.0, 1.0, 2.0}, true}, 2);
    const std::string csv = io::paths_csv(r);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "param,sector,level,energy");
    const int rows = count(csv, "\n") - 1;
    EXPECT_EQ(rows, static_cast<int>(r.paths.size()) * 4);
    EXPECT_NE(csv.find("\ninf,[2]+,0,8\n"), std::string::npos);
}

TEST(Serialize, GroupPayload) {
    const json g = io::group_json("O(1) wr W2");
    EXPECT_EQ(g["order"], 8);
    EXPECT_EQ(g["continuous"], false);
    EXPECT_TRUE(io::group_json("T_a x O(1)")["order"].is_null());
}

TEST(Serialize, CouplingTokens) {
    EXPECT_TRUE(io::parse_coupling("inf").is_infinite());
    EXPECT_DOUBLE_EQ(io::parse_coupling(2.0, 3.0).value(), 6.0);
    EXPECT_THROW(io::parse_coupling("infinity"), ConfigError);
    EXPECT_THROW(io::parse_coupling(-1.0), ConfigError);
    EXPECT_EQ(io::coupling_json(Coupling::infinite()).dump(), "\"inf\"");
}

TEST(Config, ParsesAndConvertsUnits) {
    auto j = base_config();
    j["model"]["tau"] = 2.0;
    j["model"]["gamma"] = "inf";
    j["model"]["offset"] = 0.25;
    const auto c = io::parse_config(j);
    const Units u = natural_units(c.model.trap);
    EXPECT_DOUBLE_EQ(c.model.barrier.strength.value(), 2.0 * u.coupling);
    EXPECT_TRUE(c.model.gamma.is_infinite());
    EXPECT_DOUBLE_EQ(c.model.barrier.offset, 0.25);
    EXPECT_EQ(io::task_name(c.task), "spectrum");
}

TEST(Config, RejectsMalformedConfigs) {
    const auto bad = [](auto edit) {
        json j = base_config();
        edit(j);
        return j;
    };
    EXPECT_THROW(io::parse_config(bad([](json& j) { j.erase("units"); })), ConfigError);
    EXPECT_THROW(io::parse_config(bad([](json& j) { j["units"] = "hbar*omega*sigma"; })), ConfigError);
    EXPECT_THROW(io::parse_config(bad([](json& j) { j["extra"] = 1; })), ConfigError);
    EXPECT_THROW(io::parse_config(bad([](json& j) { j["model"]["gamma"] = "Inf"; })), ConfigError);
    EXPECT_THROW(io::parse_config(bad([](json& j) { j["task"]["kind"] = "plot"; })), ConfigError);
    EXPECT_THROW(io::parse_config(bad([](json& j) { j["task"]["n_max"] = -2; })), ConfigError);
    EXPECT_THROW(io::parse_config(bad([](json& j) { j["output"]["format"] = "xml"; })), ConfigError);
    EXPECT_THROW(io::parse_config(bad([](json& j) { j["model"]["trap"]["kind"] = "box"; })), ConfigError);
    EXPECT_THROW(io::run(io::parse_config(bad([](json& j) { j["output"]["format"] = "svg"; })), scratch("fmt")), ConfigError);
}

TEST(Config, ShippedConfigsParse) {
    int n = 0;
    for (const auto& f : std::filesystem::directory_iterator(SPLITWELL_CONFIG_DIR)) {
        if (f.path().extension() != ".json") continue;
        EXPECT_NO_THROW(io::load_config(f.path().string())) << f.path();
        ++n;
    }
    EXPECT_GE(n, 5);
}

TEST(Run, SquareWellSpectrumTask) {
    const auto dir = scratch("spectrum");
    const auto r = io::run(io::parse_config(base_config()), dir);
    const json doc = json::parse(slurp(dir / "out.json"));
    EXPECT_EQ(doc["schema"], io::kSchema);
    EXPECT_EQ(doc["units"]["energy"], "eps0");
    std::vector<double> e;
    for (const auto& l : doc["result"]["levels"]) e.push_back(l["energy"].get<double>());
    const std::vector<double> want{2, 5, 8, 10, 13, 17, 18, 20};
    ASSERT_EQ(e.size(), want.size());
    for (std::size_t k = 0; k < e.size(); ++k) EXPECT_NEAR(e[k], want[k], 1e-12 * want[k]);
    EXPECT_EQ(r.summary["status"], "ok");
}

TEST(Run, EmptyAuditIsEmptyReport) {
    json j = base_config();
    j["task"] = {{"kind", "audit"}, {"n_max", 0}};
    const auto dir = scratch("audit");
    io::run(io::parse_config(j), dir);
    const json doc = json::parse(slurp(dir / "out.json"));
    EXPECT_TRUE(doc["result"]["entries"].empty());
}

TEST(Run, RepeatedRunsAreByteIdentical) {
    json j = base_config();
    j["task"] = json::parse(R"({"kind":"sweep","n_max":4,"panels":[{"id":"p","parameter":"gamma","fixed":0,"grid":[0,1,4],"terminal":"inf"}]})");
    for (const char* f : {"json", "csv", "svg"}) {
        j["output"]["format"] = f;
        j["output"]["path"] = std::string("out.") + f;
        const auto a = scratch("rep_a"), b = scratch("rep_b");
        io::run(io::parse_config(j), a);
        io::run(io::parse_config(j), b);
        EXPECT_EQ(slurp(a / j["output"]["path"].get<std::string>()), slurp(b / j["output"]["path"].get<std::string>())) << f;
    }
}

TEST(Svg, OnePolylinePerPath) {
    const auto m = isw();
    const auto r = sweep(m, SweepSpec{SweepParameter::Tau, 0.0, {0.0, 1.0, 4.0}, true}, 8);
    const auto svg = io::emit_level_diagram({"t", {{"a", &r, 1.0, {}, {}}}, 2, 1e-6});
    EXPECT_EQ(count(svg, "<polyline"), static_cast<int>(r.paths.size()));
}

TEST(Svg, ConstantPathIsHorizontal) {
    SweepResult r;
    r.base = isw();
    r.spec = SweepSpec{SweepParameter::Gamma, 0.0, {0.0, 1.0, 2.0}, false};
    LevelPath p;
    p.energies = {3.0, 3.0, 3.0};
    r.paths.push_back(p);
    const auto svg = io::emit_level_diagram({"t", {{"a", &r, 1.0, {}, {}}}, 1, 1e-6});
    std::smatch m;
    ASSERT_TRUE(std::regex_search(svg, m, std::regex("points=\"([^\"]*)\"")));
    std::regex pt("[0-9.]+,([0-9.]+)");
    std::set<std::string> ys;
    const std::string pts = m[1];
    for (std::sregex_iterator it(pts.begin(), pts.end(), pt), end; it != end; ++it) ys.insert((*it)[1]);
    EXPECT_EQ(count(svg, "<polyline"), 1);
    EXPECT_EQ(ys.size(), 1u);
}

TEST(Svg, EmptyInputThrows) {
    SweepResult r;
    r.base = isw();
    EXPECT_THROW(io::emit_level_diagram({"t", {{"a", &r, 1.0, {}, {}}}, 1, 1e-6}), EmptyInput);
    EXPECT_THROW(io::emit_level_diagram({"t", {}, 1, 1e-6}), EmptyInput);
}

TEST(Cli, ExitCodes) {
    const auto dir = scratch("cli");
    const auto run = [&](const json& j) {
        std::ofstream(dir / "c.json") << j.dump();
        const std::string cmd = std::string(SPLITWELL_CLI) + " --config " + (dir / "c.json").string() + " --out-dir " + dir.string() +
                                " > " + (dir / "log").string() + " 2>&1";
        const int s = std::system(cmd.c_str());
        return WEXITSTATUS(s);
    };
    EXPECT_EQ(run(base_config()), 0);
    json bad = base_config();
    bad.erase("units");
    EXPECT_EQ(run(bad), 1);
    json solver = base_config();
    solver["task"] = {{"kind", "adiabatic"}, {"initial", "(00)+"}, {"ramps", {"tau", "tau"}}};
    EXPECT_EQ(run(solver), 2);
    const std::string missing = std::string(SPLITWELL_CLI) + " --config /nonexistent.json > /dev/null 2>&1";
    EXPECT_EQ(WEXITSTATUS(std::system(missing.c_str())), 1);
}
