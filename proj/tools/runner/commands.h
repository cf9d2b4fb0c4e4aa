#pragma once

#include <iosfwd>
#include <string>

#include "qsc/graph.h"
#include "runner/config.h"

namespace qsc::runner {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitGuard = 3;

/// "path:3", "cycle:5", "complete:4", "star:4" (leaves), "empty:3",
/// "petersen", or otherwise a graph file path.
Graph resolve_graph(const std::string& spec);

void run_sample(const Config& cfg, std::ostream& log);
void run_qsim(const Config& cfg, std::ostream& log);
void run_stabilizer(const Config& cfg, std::ostream& out);
void run_adiabatic(const Config& cfg, std::ostream& log);
void run_plot(const Config& cfg, std::ostream& log);

/// Runs cfg.command() and maps failures to exit statuses: 2 for bad
/// configuration or parameters, 3 for size-guard errors, 1 otherwise.
int execute(const Config& cfg, std::ostream& out, std::ostream& err);

/// Loads a config file for `command` (the file may also name it with a
/// `command` key) and executes it.
int run_config(const std::string& command, const std::string& path, std::ostream& out, std::ostream& err);

}  // namespace qsc::runner
