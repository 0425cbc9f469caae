#pragma once

#include <string>

namespace CLI {
class App;
}

namespace pinlab_cli {

// Shared mutable state across subcommand callbacks; verify is the only
// command that reports failure through the exit code rather than throwing.
struct context {
    int exit_code = 0;
};

void register_minimise(CLI::App& app);
void register_phase_sweep(CLI::App& app);
void register_sample(CLI::App& app);
void register_free_energy(CLI::App& app);
void register_verify(CLI::App& app, context& ctx);

std::string join_path(const std::string& dir, const std::string& name);

}  // namespace pinlab_cli
