#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "splitwell/io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"splitwell: spectra and level maps for two particles in a split trap"};
    std::string config, out_dir = ".";
    app.add_option("--config", config, "run configuration (JSON)")->required();
    app.add_option("--out-dir", out_dir, "directory for output files");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    using namespace splitwell;
    const auto fail = [](const char* status, const std::exception& e, int code) {
        std::cout << io::json{{"status", status}, {"error", e.what()}}.dump() << "\n";
        std::cerr << "splitwell: " << e.what() << "\n";
        return code;
    };
    try {
        const auto cfg = io::load_config(config);
        const auto r = io::run(cfg, out_dir);
        std::cout << r.summary.dump() << "\n";
        return 0;
    } catch (const ConfigError& e) {
        return fail("config-error", e, 1);
    } catch (const SolverError& e) {
        return fail("solver-error", e, 2);
    } catch (const IoError& e) {
        return fail("io-error", e, 2);
    }
}
