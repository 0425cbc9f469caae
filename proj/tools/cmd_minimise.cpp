#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "pinlab/chain.hpp"
#include "pinlab/io.hpp"
#include "pinlab/variational.hpp"

namespace pinlab_cli {

namespace {

struct minimise_opts {
    double a = 0.0, alpha = 0.0;
    double b = 0.0, beta = 0.0;
    bool free_right = false;
    double tau = 0.0;
    double eps = 0.0;
    std::string tau_from;
    int grid = 512;
    std::string out = pinlab::default_output_dir();
    std::string prefix = "minimise";
    bool has_right = false, has_tau = false, has_eps = false;
};

// Look up tau(eps) in a CSV with an "eps" column and a "tau" or "tau_hat"
// column, interpolating linearly in log eps between table rows.
double tau_from_table(const std::string& path, double eps) {
    if (!(eps > 0.0)) throw std::runtime_error("minimise: --eps must be positive");
    std::ifstream in(path);
    if (!in) throw std::runtime_error("minimise: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("minimise: empty table " + path);

    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string c;
        while (std::getline(ss, c, ',')) cells.push_back(c);
        return cells;
    };
    std::vector<std::string> header = split(line);
    int ci_eps = -1, ci_tau = -1;
    for (size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "eps" && ci_eps < 0) ci_eps = static_cast<int>(i);
        if ((header[i] == "tau" || header[i] == "tau_hat") && ci_tau < 0)
            ci_tau = static_cast<int>(i);
    }
    if (ci_eps < 0 || ci_tau < 0)
        throw std::runtime_error("minimise: table needs eps and tau columns: " + path);

    std::vector<std::pair<double, double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells = split(line);
        if (cells.size() <= static_cast<size_t>(std::max(ci_eps, ci_tau))) continue;
        double e = std::stod(cells[static_cast<size_t>(ci_eps)]);
        double t = std::stod(cells[static_cast<size_t>(ci_tau)]);
        if (e > 0.0) rows.emplace_back(e, t);
    }
    if (rows.empty()) throw std::runtime_error("minimise: no usable rows in " + path);
    std::sort(rows.begin(), rows.end());

    if (eps <= rows.front().first) {
        if (eps == rows.front().first) return rows.front().second;
        throw std::runtime_error("minimise: --eps below the table range");
    }
    if (eps >= rows.back().first) {
        if (eps == rows.back().first) return rows.back().second;
        throw std::runtime_error("minimise: --eps above the table range");
    }
    for (size_t i = 0; i + 1 < rows.size(); ++i) {
        if (eps > rows[i + 1].first) continue;
        double x0 = std::log(rows[i].first), x1 = std::log(rows[i + 1].first);
        double w = (std::log(eps) - x0) / (x1 - x0);
        return rows[i].second + w * (rows[i + 1].second - rows[i].second);
    }
    return rows.back().second;
}

void run(const minimise_opts& o) {
    auto t0 = std::chrono::steady_clock::now();
    if (o.free_right == o.has_right)
        throw std::runtime_error("minimise: give either --b/--beta or --free-right");
    if (o.has_tau == o.has_eps)
        throw std::runtime_error("minimise: give exactly one of --tau and --eps");
    if (o.has_eps && o.tau_from.empty())
        throw std::runtime_error("minimise: --eps needs --tau-from <table>");

    double tau = o.has_tau ? o.tau : tau_from_table(o.tau_from, o.eps);

    nlohmann::json input;
    input["a"] = o.a;
    input["alpha"] = o.alpha;
    input["free_right"] = o.free_right;
    input["tau"] = tau;
    if (o.has_eps) input["eps"] = o.eps;
    input["grid"] = o.grid;

    pinlab::phase_report rep;
    if (o.free_right) {
        rep = pinlab::classify_free(o.a, o.alpha, tau);
    } else {
        input["b"] = o.b;
        input["beta"] = o.beta;
        if (o.b == o.a && o.beta == -o.alpha)
            rep = pinlab::classify_dirichlet_symmetric(o.a, o.alpha, tau);
        else
            rep = pinlab::classify_dirichlet_numeric(
                pinlab::boundary_data::clamped(o.a, o.alpha, o.b, o.beta), tau);
    }

    std::vector<std::string> outputs;
    nlohmann::json jmins = nlohmann::json::array();
    for (size_t i = 0; i < rep.minimisers.size(); ++i) {
        const pinlab::minimiser_descriptor& d = rep.minimisers[i];
        std::string csv_name = o.prefix + "_profile_" + std::to_string(i) + ".csv";
        pinlab::csv_writer w(join_path(o.out, csv_name), {"t", "h"});
        std::vector<double> h = pinlab::build_profile(d, o.grid);
        for (int j = 0; j <= o.grid; ++j)
            w.row_values({static_cast<double>(j) / o.grid, h[static_cast<size_t>(j)]});
        outputs.push_back(csv_name);

        nlohmann::json jd;
        jd["kind"] = pinlab::to_string(d.kind);
        if (d.l) jd["l"] = *d.l;
        if (d.r) jd["r"] = *d.r;
        jd["energy"] = d.energy;
        jd["zero_measure"] = d.zero_measure;
        jd["sigma"] = pinlab::sigma_value(d, tau);
        jd["profile_csv"] = csv_name;
        jmins.push_back(jd);
    }

    nlohmann::json jlens = nlohmann::json::array();
    for (const pinlab::critical_length& cl : rep.lengths)
        jlens.push_back({{"l", cl.l},
                         {"kind", cl.kind == pinlab::length_kind::first ? "first" : "second"},
                         {"feasible", cl.feasible}});

    nlohmann::json jrep;
    jrep["schema"] = "phase_report.v1";
    jrep["version"] = pinlab::kVersion;
    jrep["input"] = input;
    jrep["regime"] = rep.regime;
    jrep["degenerate"] = rep.degenerate;
    jrep["sigma_min"] = rep.sigma_min;
    jrep["note"] = rep.note;
    jrep["lengths"] = jlens;
    jrep["minimisers"] = jmins;

    std::string rep_name = o.prefix + "_report.json";
    {
        std::ofstream f(join_path(o.out, rep_name));
        if (!f) throw std::runtime_error("minimise: cannot open " + rep_name);
        f << jrep.dump(2) << "\n";
    }
    outputs.push_back(rep_name);

    pinlab::run_manifest m;
    m.command = "minimise";
    m.config_json = input.dump();
    m.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m.outputs = outputs;
    pinlab::write_manifest(m, join_path(o.out, o.prefix + "_manifest.json"));

    std::printf("minimise: regime %s, sigma_min %s, %zu minimiser(s)\n", rep.regime.c_str(),
                pinlab::format_double(rep.sigma_min).c_str(), rep.minimisers.size());
}

}  // namespace

void register_minimise(CLI::App& app) {
    auto o = std::make_shared<minimise_opts>();
    CLI::App* cmd = app.add_subcommand(
        "minimise", "Classify the rate-function minimisers for one boundary data point");
    cmd->add_option("--a", o->a, "Left boundary height")->required();
    cmd->add_option("--alpha", o->alpha, "Left boundary slope")->required();
    CLI::Option* ob = cmd->add_option("--b", o->b, "Right boundary height");
    CLI::Option* obe = cmd->add_option("--beta", o->beta, "Right boundary slope");
    ob->needs(obe);
    obe->needs(ob);
    cmd->add_flag("--free-right", o->free_right, "Leave the right end unconstrained");
    cmd->add_option("--tau", o->tau, "Reward per unit length of zero set");
    cmd->add_option("--eps", o->eps, "Pinning strength, converted through --tau-from");
    cmd->add_option("--tau-from", o->tau_from, "CSV with eps and tau columns");
    cmd->add_option("--grid", o->grid, "Intervals per profile CSV")->check(CLI::Range(2, 1 << 20));
    cmd->add_option("--out", o->out, "Output directory");
    cmd->add_option("--prefix", o->prefix, "Output filename prefix");
    cmd->callback([o, cmd]() {
        o->has_right = cmd->count("--b") > 0;
        o->has_tau = cmd->count("--tau") > 0;
        o->has_eps = cmd->count("--eps") > 0;
        run(*o);
    });
}

}  // namespace pinlab_cli
