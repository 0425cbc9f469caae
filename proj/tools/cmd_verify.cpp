#include <chrono>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "pinlab/io.hpp"
#include "pinlab/verify.hpp"

namespace pinlab_cli {

namespace {

struct verify_opts {
    std::string suite = "all";
    bool quick = false;
    std::string out = pinlab::default_output_dir();
    std::string prefix = "verify";
};

void run(const verify_opts& o, context& ctx) {
    auto t0 = std::chrono::steady_clock::now();
    pinlab::verify::options vopt;
    vopt.quick = o.quick;
    std::vector<pinlab::verify::check_result> checks = pinlab::verify::run_suite(o.suite, vopt);

    bool all_pass = true;
    nlohmann::json jchecks = nlohmann::json::array();
    for (const auto& c : checks) {
        all_pass = all_pass && c.pass;
        std::printf("[%s] %-40s %6.1fs  %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.seconds, c.detail.c_str());
        jchecks.push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"detail", c.detail},
                           {"seconds", c.seconds}});
    }

    nlohmann::json jrep;
    jrep["schema"] = "verify.v1";
    jrep["version"] = pinlab::kVersion;
    jrep["suite"] = o.suite;
    jrep["quick"] = o.quick;
    jrep["checks"] = jchecks;
    jrep["passed"] = all_pass;

    std::string rep_name = o.prefix + "_report.json";
    {
        std::ofstream f(join_path(o.out, rep_name));
        if (!f) throw std::runtime_error("verify: cannot open " + rep_name);
        f << jrep.dump(2) << "\n";
    }

    nlohmann::json input;
    input["suite"] = o.suite;
    input["quick"] = o.quick;
    pinlab::run_manifest m;
    m.command = "verify";
    m.config_json = input.dump();
    m.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m.outputs = {rep_name};
    pinlab::write_manifest(m, join_path(o.out, o.prefix + "_manifest.json"));

    std::printf("verify: suite %s %s\n", o.suite.c_str(), all_pass ? "passed" : "FAILED");
    if (!all_pass) ctx.exit_code = 1;
}

}  // namespace

void register_verify(CLI::App& app, context& ctx) {
    auto o = std::make_shared<verify_opts>();
    CLI::App* cmd = app.add_subcommand("verify", "Run a verification suite and report pass/fail");
    std::vector<std::string> allowed = pinlab::verify::suite_names();
    allowed.push_back("all");
    cmd->add_option("--suite", o->suite, "core | variational | sampler | free-energy | ldp | all")
        ->check(CLI::IsMember(allowed));
    cmd->add_flag("--quick", o->quick, "Reduced Monte Carlo budgets");
    cmd->add_option("--out", o->out, "Output directory");
    cmd->add_option("--prefix", o->prefix, "Output filename prefix");
    cmd->callback([o, &ctx]() { run(*o, ctx); });
}

}  // namespace pinlab_cli
