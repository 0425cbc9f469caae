#include "pinlab/sampler.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pinlab {

chain_state::chain_state(int N, bool free_right_)
    : field(N), free_right(free_right_), pin_flag(static_cast<size_t>(N + 3), 0) {}

int chain_state::pin_count() const {
    int c = 0;
    for (auto f : pin_flag) c += (f != 0);
    return c;
}

pin_set chain_state::pins() const {
    std::vector<int> s;
    int K = free_right ? field.N + 1 : field.N - 1;
    for (int k = 1; k <= K; ++k)
        if (is_pinned(k)) s.push_back(k);
    return pin_set(std::move(s), field.N, free_right);
}

lattice_field sample_integrated_rw(int N, double a, double alpha, rng& g) {
    if (N < 2) throw std::domain_error("sample_integrated_rw: N must be at least 2");
    lattice_field f(N);
    double height = a * N * N;
    double slope = alpha * N;
    f.at(-1) = height - slope;
    f.at(0) = height;
    for (int n = 1; n <= N + 1; ++n) {
        slope += g.normal();
        height += slope;
        f.at(n) = height;
    }
    return f;
}

namespace {

// Cubic through the origin with value u at x=N and increment v to x=N+1;
// vanishes identically when u=v=0.
double endpoint_cubic(int N, double x, double u, double v) {
    double n = N;
    double c3 = -2.0 * u + v * n;
    double c2 = 3.0 * u * n + v * n - v * n * n;
    double c1 = (2.0 + 3.0 * n) * u - n * n * v;
    return ((c3 * x + c2) * x + c1) * x / (n * (n + 1.0) * (n + 2.0));
}

}  // namespace

lattice_field bridge_map(const lattice_field& f) {
    int N = f.N;
    double u = f.at(N);
    double v = f.at(N + 1) - f.at(N);
    lattice_field out(N);
    for (int k = -1; k <= N + 1; ++k)
        out.at(k) = f.at(k) - endpoint_cubic(N, static_cast<double>(k), u, v);
    double scale = std::max({std::abs(u), std::abs(v), 1.0});
    if (std::abs(out.at(N)) > 1e-9 * scale || std::abs(out.at(N + 1)) > 1e-9 * scale)
        throw std::runtime_error("bridge_map: endpoint cancellation failed");
    out.at(N) = 0.0;
    out.at(N + 1) = 0.0;
    return out;
}

lattice_field sample_pinned_gaussian(int N, const boundary_data& bc, const pin_set& pins,
                                     rng& g) {
    lattice_field f = discrete_minimiser(N, bc, pins);
    bool fr = !bc.clamped_right();
    banded_spd m = precision_matrix(N, pins, fr);
    if (m.n == 0) return f;
    banded_ldlt fac = factorize(m);
    std::vector<double> x(static_cast<size_t>(m.n));
    for (int i = 0; i < m.n; ++i)
        x[static_cast<size_t>(i)] = g.normal() / std::sqrt(fac.d[static_cast<size_t>(i)]);
    fac.solve_lt(x);  // x = L^{-T} D^{-1/2} xi has covariance M^{-1}
    int K = fr ? N + 1 : N - 1;
    int idx = 0;
    for (int k = 1; k <= K; ++k) {
        if (pins.contains(k)) continue;
        f.at(k) += x[static_cast<size_t>(idx++)];
    }
    return f;
}

void gibbs_update_site(chain_state& s, int k, double epsilon, rng& g) {
    int N = s.field.N;
    // Quadratic and linear coefficients of the energy as a function of
    // phi_k alone, read off the bandwidth-2 stencil rows.
    s.field.at(k) = 0.0;
    double c = 0.0, lin = 0.0;
    for (int m = k - 1; m <= k + 1; ++m) {
        if (m < 0 || m > N) continue;
        double w = (m == k) ? -2.0 : 1.0;
        double rest = s.field.at(m + 1) + s.field.at(m - 1) - 2.0 * s.field.at(m);
        c += w * w;
        lin += w * rest;
    }
    double mean = -lin / c;
    // Atom weight epsilon against Gaussian mass sqrt(2 pi / c) e^{c mean^2/2}.
    double p_pin = epsilon / (epsilon + std::sqrt(2.0 * std::numbers::pi / c) *
                                            std::exp(0.5 * c * mean * mean));
    if (g.uniform() < p_pin) {
        s.pin_flag[static_cast<size_t>(k + 1)] = 1;
    } else {
        s.pin_flag[static_cast<size_t>(k + 1)] = 0;
        s.field.at(k) = mean + g.normal() / std::sqrt(c);
    }
}

void gibbs_sweep(chain_state& s, double epsilon, rng& g) {
    int K = s.free_right ? s.field.N + 1 : s.field.N - 1;
    for (int k = 1; k <= K; ++k) gibbs_update_site(s, k, epsilon, g);
    for (int k = K; k >= 1; --k) gibbs_update_site(s, k, epsilon, g);
}

void gibbs_sweep_random(chain_state& s, double epsilon, rng& g) {
    int K = s.free_right ? s.field.N + 1 : s.field.N - 1;
    for (int i = 0; i < 2 * K; ++i) {
        int k = 1 + static_cast<int>(g.uniform() * K);
        if (k > K) k = K;
        gibbs_update_site(s, k, epsilon, g);
    }
}

int contact_number(const lattice_field& f) {
    int c = 0;
    for (int k = 1; k <= f.N; ++k) c += (f.at(k) == 0.0);
    return c;
}

chain_state initial_state(const sampler_config& cfg) {
    chain_state s(cfg.N, !cfg.bc.clamped_right());
    s.field = discrete_minimiser(cfg.N, cfg.bc, pin_set{});
    return s;
}

chain_summary run_chain(const sampler_config& cfg,
                        const std::function<void(const chain_record&)>& on_sample,
                        const chain_state* init) {
    if (cfg.N < 2) throw std::domain_error("run_chain: N must be at least 2");
    if (cfg.epsilon < 0.0) throw std::domain_error("run_chain: epsilon must be nonnegative");
    if (!(cfg.sweeps > cfg.burn_in) || cfg.burn_in < 0)
        throw std::domain_error("run_chain: need sweeps > burn_in >= 0");
    if (cfg.thin < 1) throw std::domain_error("run_chain: thin must be at least 1");
    if (init && (init->field.N != cfg.N || init->free_right == cfg.bc.clamped_right()))
        throw std::domain_error("run_chain: initial state does not match config");

    rng g(cfg.seed, cfg.stream);
    chain_state s = init ? *init : initial_state(cfg);

    chain_summary sum;
    for (long t = 1; t <= cfg.sweeps; ++t) {
        if (cfg.random_scan)
            gibbs_sweep_random(s, cfg.epsilon, g);
        else
            gibbs_sweep(s, cfg.epsilon, g);
        if (t <= cfg.burn_in || (t - cfg.burn_in) % cfg.thin != 0) continue;
        double cf = static_cast<double>(contact_number(s.field)) / cfg.N;
        chain_record rec{t, s, cf, empirical_profile(s.field)};
        sum.emitted += 1;
        sum.mean_contact_fraction += cf;
        sum.mean_pin_fraction += static_cast<double>(s.pin_count()) / cfg.N;
        if (on_sample) on_sample(rec);
    }
    if (sum.emitted > 0) {
        sum.mean_contact_fraction /= static_cast<double>(sum.emitted);
        sum.mean_pin_fraction /= static_cast<double>(sum.emitted);
    }
    return sum;
}

}  // namespace pinlab
