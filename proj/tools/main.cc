#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "runner/commands.h"
#include "runner/config.h"

namespace {

const char* describe(const std::string& command) {
    if (command == "sample") {
        return "classical partial rejection sampling experiments (runs.csv, summary.csv, optional SVG)";
    }
    if (command == "qsim") {
        return "measure-and-reset state preparation on the statevector simulator (JSON report)";
    }
    if (command == "stabilizer") {
        return "stabilizer and syndrome-extraction matrices for a Boolean constraint";
    }
    if (command == "adiabatic") {
        return "Trotterized adiabatic MIS with and without subspace correction (CSV)";
    }
    return "plot a summary CSV as SVG";
}

}  // namespace

int main(int argc, char** argv) {
    using qsc::runner::Config;
    using qsc::runner::ConfigError;

    CLI::App app{"qsc: subspace-correction sampling and simulation toolkit"};
    app.require_subcommand(1);

    struct Sub {
        CLI::App* app = nullptr;
        std::string config_path;
        std::map<std::string, std::string> values;
        std::map<std::string, CLI::Option*> options;
    };
    std::map<std::string, Sub> subs;
    for (const std::string& name : qsc::runner::command_names()) {
        Sub& s = subs[name];
        s.app = app.add_subcommand(name, describe(name));
        s.app->add_option("--config", s.config_path, "flat key = value file; flags override it");
        for (const auto& key : qsc::runner::schema_for(name)) {
            std::string help = key.help + " [default: " + (key.default_value.empty() ? "\"\"" : key.default_value) + "]";
            s.options[key.name] = s.app->add_option("--" + key.name, s.values[key.name], help);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return qsc::runner::kExitConfig;
    }

    for (auto& [name, s] : subs) {
        if (!s.app->parsed()) {
            continue;
        }
        try {
            Config cfg(name);
            if (!s.config_path.empty()) {
                cfg.merge_file(s.config_path);
            }
            for (const auto& [key, opt] : s.options) {
                if (opt->count() > 0) {
                    cfg.set(key, s.values[key], "--" + key);
                }
            }
            return qsc::runner::execute(cfg, std::cout, std::cerr);
        } catch (const ConfigError& e) {
            std::cerr << "config error: " << e.what() << '\n';
            return qsc::runner::kExitConfig;
        }
    }
    return qsc::runner::kExitConfig;
}
