#include <chrono>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "pinlab/io.hpp"
#include "pinlab/sampler.hpp"

namespace pinlab_cli {

namespace {

struct sample_opts {
    int N = 32;
    double a = 0.0, alpha = 0.0;
    double b = 0.0, beta = 0.0;
    bool free_right = false;
    double eps = 1.0;
    std::uint64_t seed = 1;
    long sweeps = 2000;
    long burn_in = 500;
    long thin = 1;
    int replicas = 1;
    bool random_scan = false;
    bool dump_profiles = false;
    std::string out = pinlab::default_output_dir();
    std::string prefix = "sample";
    bool has_right = false;
};

void run(const sample_opts& o) {
    auto t0 = std::chrono::steady_clock::now();
    if (o.free_right == o.has_right)
        throw std::runtime_error("sample: give either --b/--beta or --free-right");
    if (o.replicas < 1) throw std::runtime_error("sample: --replicas must be positive");

    pinlab::sampler_config cfg;
    cfg.N = o.N;
    cfg.bc = o.free_right ? pinlab::boundary_data::free_right(o.a, o.alpha)
                          : pinlab::boundary_data::clamped(o.a, o.alpha, o.b, o.beta);
    cfg.epsilon = o.eps;
    cfg.seed = o.seed;
    cfg.sweeps = o.sweeps;
    cfg.burn_in = o.burn_in;
    cfg.thin = o.thin;
    cfg.random_scan = o.random_scan;

    std::string trace_name = o.prefix + "_trace.csv";
    pinlab::csv_writer trace(join_path(o.out, trace_name),
                             {"replica", "sweep", "contact_fraction", "pin_fraction", "h_half"});
    std::vector<std::string> outputs = {trace_name};

    for (int r = 0; r < o.replicas; ++r) {
        cfg.stream = static_cast<std::uint64_t>(r);
        std::optional<pinlab::macro_profile> last;
        pinlab::chain_summary sum = pinlab::run_chain(cfg, [&](const pinlab::chain_record& rec) {
            trace.row({std::to_string(r), std::to_string(rec.sweep),
                       pinlab::format_double(rec.contact_fraction),
                       pinlab::format_double(static_cast<double>(rec.state.pin_count()) / o.N),
                       pinlab::format_double(rec.profile.at(o.N / 2))});
            if (o.dump_profiles) last = rec.profile;
        });
        if (o.dump_profiles && last) {
            std::string pname = o.prefix + "_profile_r" + std::to_string(r) + ".csv";
            pinlab::csv_writer w(join_path(o.out, pname), {"k", "t", "h"});
            for (int k = -1; k <= o.N + 1; ++k)
                w.row({std::to_string(k), pinlab::format_double(static_cast<double>(k) / o.N),
                       pinlab::format_double(last->at(k))});
            outputs.push_back(pname);
        }
        std::printf("sample: replica %d, %ld samples, mean contact %s, mean pins %s\n", r,
                    sum.emitted, pinlab::format_double(sum.mean_contact_fraction).c_str(),
                    pinlab::format_double(sum.mean_pin_fraction).c_str());
    }

    nlohmann::json input;
    input["N"] = o.N;
    input["a"] = o.a;
    input["alpha"] = o.alpha;
    input["free_right"] = o.free_right;
    if (!o.free_right) {
        input["b"] = o.b;
        input["beta"] = o.beta;
    }
    input["eps"] = o.eps;
    input["sweeps"] = o.sweeps;
    input["burn_in"] = o.burn_in;
    input["thin"] = o.thin;
    input["replicas"] = o.replicas;
    input["random_scan"] = o.random_scan;
    input["dump_profiles"] = o.dump_profiles;

    pinlab::run_manifest m;
    m.command = "sample";
    m.config_json = input.dump();
    m.seed = o.seed;
    m.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m.outputs = outputs;
    pinlab::write_manifest(m, join_path(o.out, o.prefix + "_manifest.json"));
}

}  // namespace

void register_sample(CLI::App& app) {
    auto o = std::make_shared<sample_opts>();
    CLI::App* cmd =
        app.add_subcommand("sample", "Run pinned-Gibbs chains and write observable traces");
    cmd->add_option("--n", o->N, "Interval size N")->required()->check(CLI::Range(2, 1 << 24));
    cmd->add_option("--a", o->a, "Left boundary height");
    cmd->add_option("--alpha", o->alpha, "Left boundary slope");
    CLI::Option* ob = cmd->add_option("--b", o->b, "Right boundary height");
    CLI::Option* obe = cmd->add_option("--beta", o->beta, "Right boundary slope");
    ob->needs(obe);
    obe->needs(ob);
    cmd->add_flag("--free-right", o->free_right, "Leave the right end unconstrained");
    cmd->add_option("--eps", o->eps, "Pinning strength")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", o->seed, "RNG seed");
    cmd->add_option("--sweeps", o->sweeps, "Total sweeps including burn-in");
    cmd->add_option("--burn-in", o->burn_in, "Discarded initial sweeps");
    cmd->add_option("--thin", o->thin, "Keep every thin-th sweep");
    cmd->add_option("--replicas", o->replicas, "Independent chains (RNG streams)");
    cmd->add_flag("--random-scan", o->random_scan, "Random site order instead of sweeps");
    cmd->add_flag("--dump-profiles", o->dump_profiles, "Write the final profile per replica");
    cmd->add_option("--out", o->out, "Output directory");
    cmd->add_option("--prefix", o->prefix, "Output filename prefix");
    cmd->callback([o, cmd]() {
        o->has_right = cmd->count("--b") > 0;
        run(*o);
    });
}

}  // namespace pinlab_cli
