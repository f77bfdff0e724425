#include <CLI11.hpp>

#include <iostream>

#include <microlocal/cli/commands.hpp>

using namespace microlocal;

namespace {

std::string key_listing() {
    std::string s = "\nParameters (key=value, via --config or --set):\n";
    for (const auto& cmd : command_names()) {
        s += "  " + cmd + "\n";
        for (const auto& p : command_params(cmd))
            s += "    " + p.key + " = " + (p.fallback.empty() ? "\"\"" : p.fallback) + "  " + p.help + "\n";
    }
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Microlocal experiment runner: writes CSV/JSON artifacts and a manifest per run."};
    app.footer(key_listing());
    RunConfig cfg;
    std::string out_dir = "out", config_file;
    std::vector<std::string> sets;
    app.add_option("command", cfg.command, "Experiment to run")->required()->check(CLI::IsMember(command_names()));
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    app.add_option("--config", config_file, "Flat key=value file");
    app.add_option("--set", sets, "Override one key (repeatable)")->take_all();
    app.add_flag("--deterministic", cfg.deterministic, "Single-threaded, no timestamps: byte-identical reruns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        cfg.out_dir = out_dir;
        if (!config_file.empty())
            for (auto& [k, v] : parse_config_file(config_file)) cfg.overrides[k] = v;
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos || eq == 0) throw UsageError("--set expects key=value, got '" + s + "'");
            cfg.overrides[s.substr(0, eq)] = s.substr(eq + 1);
        }
        return run_command(cfg, std::cout);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
