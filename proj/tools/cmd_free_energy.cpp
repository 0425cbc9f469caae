#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "pinlab/free_energy.hpp"
#include "pinlab/io.hpp"

namespace pinlab_cli {

namespace {

struct fe_opts {
    bool exact = false;
    bool estimate = false;
    int N = 12;                   // exact mode
    std::vector<int> N_list;      // estimate mode
    double eps_min = 1e-2;        // exact-mode grid
    double eps_max = 1e2;
    int per_decade = 8;
    std::vector<double> eps;      // estimate-mode targets
    long sweeps = 4000;
    long burn_in = 1000;
    int replicas = 4;
    int nodes_per_decade = 16;
    double eps_floor = 1e-3;
    std::uint64_t seed = 1;
    std::string out = pinlab::default_output_dir();
    std::string prefix = "free_energy";
};

void run_exact(const fe_opts& o, std::vector<std::string>& outputs) {
    std::string name = o.prefix + "_ratio.csv";
    pinlab::csv_writer w(join_path(o.out, name),
                         {"N", "eps", "log_ratio", "tau_per_site", "density"});
    // eps = 0 turns the reward off: the ratio is identically 1.
    w.row({std::to_string(o.N), pinlab::format_double(0.0), pinlab::format_double(0.0),
           pinlab::format_double(0.0), pinlab::format_double(0.0)});
    for (int j = 0;; ++j) {
        double eps = o.eps_min * std::pow(10.0, static_cast<double>(j) / o.per_decade);
        if (eps > o.eps_max * (1.0 + 1e-12)) break;
        double lr = pinlab::ratio_exact(o.N, eps);
        w.row({std::to_string(o.N), pinlab::format_double(eps), pinlab::format_double(lr),
               pinlab::format_double(lr / o.N),
               pinlab::format_double(pinlab::pin_density_exact(o.N, eps))});
    }
    outputs.push_back(name);
}

void run_estimate(const fe_opts& o, std::vector<std::string>& outputs) {
    if (o.eps.empty()) throw std::runtime_error("free-energy: --estimate needs --eps targets");
    if (o.N_list.empty()) throw std::runtime_error("free-energy: --estimate needs --n-list");

    pinlab::ti_budget budget;
    budget.nodes_per_decade = o.nodes_per_decade;
    budget.eps_floor = o.eps_floor;
    budget.sweeps = o.sweeps;
    budget.burn_in = o.burn_in;
    budget.replicas = o.replicas;
    budget.seed = o.seed;

    std::string curve_name = o.prefix + "_tau.csv";
    std::string per_n_name = o.prefix + "_tau_per_N.csv";
    std::string nodes_name = o.prefix + "_nodes.csv";
    pinlab::csv_writer curve(join_path(o.out, curve_name),
                             {"eps", "tau_hat", "err", "extrapolated", "converged",
                              "tau_over_log_eps"});
    pinlab::csv_writer per_n(join_path(o.out, per_n_name), {"eps", "N", "tau", "err", "exact"});
    pinlab::csv_writer nodes(join_path(o.out, nodes_name),
                             {"eps", "node_eps", "density", "spread"});

    for (double eps : o.eps) {
        pinlab::tau_estimate_result res = pinlab::tau_estimate(eps, o.N_list, budget);
        curve.row({pinlab::format_double(eps), pinlab::format_double(res.tau_hat),
                   pinlab::format_double(res.err), pinlab::format_double(res.extrapolated),
                   res.converged ? "1" : "0",
                   pinlab::format_double(res.tau_hat / std::log(eps))});
        for (size_t i = 0; i < res.N_list.size(); ++i)
            per_n.row({pinlab::format_double(eps), std::to_string(res.N_list[i]),
                       pinlab::format_double(res.tau_per_N[i]),
                       pinlab::format_double(res.err_per_N[i]),
                       pinlab::format_double(res.exact_per_N[i])});
        for (const pinlab::ti_node& nd : res.nodes)
            nodes.row({pinlab::format_double(eps), pinlab::format_double(nd.eps),
                       pinlab::format_double(nd.density), pinlab::format_double(nd.spread)});
        std::printf("free-energy: eps %s -> tau_hat %s (err %s)\n",
                    pinlab::format_double(eps).c_str(),
                    pinlab::format_double(res.tau_hat).c_str(),
                    pinlab::format_double(res.err).c_str());
    }
    outputs.push_back(curve_name);
    outputs.push_back(per_n_name);
    outputs.push_back(nodes_name);
}

void run(const fe_opts& o) {
    auto t0 = std::chrono::steady_clock::now();
    if (o.exact == o.estimate)
        throw std::runtime_error("free-energy: give exactly one of --exact and --estimate");

    std::vector<std::string> outputs;
    if (o.exact)
        run_exact(o, outputs);
    else
        run_estimate(o, outputs);

    nlohmann::json input;
    input["mode"] = o.exact ? "exact" : "estimate";
    if (o.exact) {
        input["N"] = o.N;
        input["eps_min"] = o.eps_min;
        input["eps_max"] = o.eps_max;
        input["per_decade"] = o.per_decade;
    } else {
        input["N_list"] = o.N_list;
        input["eps"] = o.eps;
        input["sweeps"] = o.sweeps;
        input["burn_in"] = o.burn_in;
        input["replicas"] = o.replicas;
        input["nodes_per_decade"] = o.nodes_per_decade;
        input["eps_floor"] = o.eps_floor;
    }

    pinlab::run_manifest m;
    m.command = "free-energy";
    m.config_json = input.dump();
    m.seed = o.seed;
    m.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m.outputs = outputs;
    pinlab::write_manifest(m, join_path(o.out, o.prefix + "_manifest.json"));
}

}  // namespace

void register_free_energy(CLI::App& app) {
    auto o = std::make_shared<fe_opts>();
    CLI::App* cmd = app.add_subcommand(
        "free-energy", "Partition-ratio tables: exact enumeration or chain estimates");
    cmd->add_flag("--exact", o->exact, "Exact subset enumeration (N <= 22)");
    cmd->add_flag("--estimate", o->estimate, "Thermodynamic-integration estimate");
    cmd->add_option("--n", o->N, "Interval size for --exact");
    cmd->add_option("--n-list", o->N_list, "Interval sizes for --estimate")->delimiter(',');
    cmd->add_option("--eps-min", o->eps_min, "Exact-mode grid start")->check(CLI::PositiveNumber);
    cmd->add_option("--eps-max", o->eps_max, "Exact-mode grid end")->check(CLI::PositiveNumber);
    cmd->add_option("--per-decade", o->per_decade, "Exact-mode grid density")
        ->check(CLI::Range(1, 1024));
    cmd->add_option("--eps", o->eps, "Estimate-mode target strengths")->delimiter(',');
    cmd->add_option("--sweeps", o->sweeps, "Sweeps per integration node");
    cmd->add_option("--burn-in", o->burn_in, "Burn-in per integration node");
    cmd->add_option("--replicas", o->replicas, "Independent chains per node");
    cmd->add_option("--nodes-per-decade", o->nodes_per_decade, "Integration grid density");
    cmd->add_option("--eps-floor", o->eps_floor, "Integration grid start")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o->seed, "RNG seed");
    cmd->add_option("--out", o->out, "Output directory");
    cmd->add_option("--prefix", o->prefix, "Output filename prefix");
    cmd->callback([o]() { run(*o); });
}

}  // namespace pinlab_cli
