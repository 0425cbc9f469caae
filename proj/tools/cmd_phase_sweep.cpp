#include <chrono>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "pinlab/io.hpp"
#include "pinlab/variational.hpp"

namespace pinlab_cli {

namespace {

struct sweep_opts {
    std::vector<double> a{1.0};
    std::vector<double> alpha{0.0};
    double tau_min = 0.0;
    double tau_max = 100.0;
    int steps = 200;
    bool symmetric = false;  // clamped (a, alpha, a, -alpha) instead of free right
    std::string out = pinlab::default_output_dir();
    std::string prefix = "phase_sweep";
};

std::string kinds_of(const pinlab::phase_report& rep) {
    std::string s;
    for (const auto& d : rep.minimisers) s += (s.empty() ? "" : "|") + pinlab::to_string(d.kind);
    return s;
}

void run(const sweep_opts& o) {
    auto t0 = std::chrono::steady_clock::now();
    if (!(o.tau_max > o.tau_min))
        throw std::runtime_error("phase-sweep: need --tau-max > --tau-min");

    std::string grid_name = o.prefix + ".csv";
    std::string bound_name = o.prefix + "_boundaries.csv";
    pinlab::csv_writer grid(join_path(o.out, grid_name),
                            {"a", "alpha", "tau", "regime", "kinds", "sigma_min", "degenerate"});
    pinlab::csv_writer bounds(join_path(o.out, bound_name),
                              {"a", "alpha", "tau_boundary", "regime_below", "regime_above"});

    int nb = 0;
    for (double a : o.a) {
        for (double al : o.alpha) {
            auto classify = [&](double tau) {
                return o.symmetric ? pinlab::classify_dirichlet_symmetric(a, al, tau)
                                   : pinlab::classify_free(a, al, tau);
            };

            // A regime, once exited along increasing tau, must not return: the
            // scan itself enforces that the phase structure is by intervals.
            std::set<std::string> exited;
            std::string prev;
            double prev_tau = o.tau_min;
            for (int i = 0; i <= o.steps; ++i) {
                double tau = o.tau_min + (o.tau_max - o.tau_min) * i / o.steps;
                pinlab::phase_report rep = classify(tau);
                grid.row({pinlab::format_double(a), pinlab::format_double(al),
                          pinlab::format_double(tau), rep.regime, kinds_of(rep),
                          pinlab::format_double(rep.sigma_min), rep.degenerate ? "1" : "0"});

                if (!prev.empty() && rep.regime != prev) {
                    double lo = prev_tau, hi = tau;
                    for (int it = 0; it < 80; ++it) {
                        double mid = 0.5 * (lo + hi);
                        (classify(mid).regime == prev ? lo : hi) = mid;
                    }
                    bounds.row({pinlab::format_double(a), pinlab::format_double(al),
                                pinlab::format_double(0.5 * (lo + hi)), prev, rep.regime});
                    ++nb;
                    exited.insert(prev);
                    if (exited.count(rep.regime) && rep.regime.rfind("boundary:", 0) != 0)
                        throw std::runtime_error("phase-sweep: regime " + rep.regime +
                                                 " reappears along increasing tau");
                }
                prev = rep.regime;
                prev_tau = tau;
            }
        }
    }

    nlohmann::json input;
    input["a"] = o.a;
    input["alpha"] = o.alpha;
    input["tau_min"] = o.tau_min;
    input["tau_max"] = o.tau_max;
    input["steps"] = o.steps;
    input["symmetric"] = o.symmetric;

    pinlab::run_manifest m;
    m.command = "phase-sweep";
    m.config_json = input.dump();
    m.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m.outputs = {grid_name, bound_name};
    pinlab::write_manifest(m, join_path(o.out, o.prefix + "_manifest.json"));

    std::printf("phase-sweep: %zu data point(s), %d boundary crossing(s)\n",
                o.a.size() * o.alpha.size(), nb);
}

}  // namespace

void register_phase_sweep(CLI::App& app) {
    auto o = std::make_shared<sweep_opts>();
    CLI::App* cmd = app.add_subcommand(
        "phase-sweep", "Scan tau, record regimes and bisect the phase boundaries");
    cmd->add_option("--a", o->a, "Left boundary height(s)")->delimiter(',');
    cmd->add_option("--alpha", o->alpha, "Left boundary slope(s)")->delimiter(',');
    cmd->add_option("--tau-min", o->tau_min, "Scan start");
    cmd->add_option("--tau-max", o->tau_max, "Scan end")->required();
    cmd->add_option("--steps", o->steps, "Grid intervals")->check(CLI::Range(1, 1 << 20));
    cmd->add_flag("--symmetric", o->symmetric,
                  "Clamped symmetric data (a, alpha, a, -alpha) instead of a free right end");
    cmd->add_option("--out", o->out, "Output directory");
    cmd->add_option("--prefix", o->prefix, "Output filename prefix");
    cmd->callback([o]() { run(*o); });
}

}  // namespace pinlab_cli
