#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "commands.hpp"
#include "pinlab/io.hpp"

namespace pinlab_cli {

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    return dir.back() == '/' ? dir + name : dir + "/" + name;
}

}  // namespace pinlab_cli

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for curvature-penalized pinned interfaces"};
    app.set_version_flag("--version", std::string(pinlab::kVersion));
    app.require_subcommand(1);

    pinlab_cli::context ctx;
    pinlab_cli::register_minimise(app);
    pinlab_cli::register_phase_sweep(app);
    pinlab_cli::register_sample(app);
    pinlab_cli::register_free_energy(app);
    pinlab_cli::register_verify(app, ctx);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return ctx.exit_code;
}
