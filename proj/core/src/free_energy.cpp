#include "pinlab/free_energy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pinlab/sampler.hpp"

namespace pinlab {

namespace {

constexpr int kEnumLimit = 22;

std::vector<int> mask_sites(std::uint32_t mask) {
    std::vector<int> s;
    for (int j = 0; mask != 0; ++j, mask >>= 1)
        if (mask & 1u) s.push_back(j + 1);
    return s;
}

double log_sum_exp(const std::vector<double>& w) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : w) m = std::max(m, x);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : w) s += std::exp(x - m);
    return m + std::log(s);
}

}  // namespace

std::vector<double> pin_set_log_weights(int N, double epsilon) {
    if (N < 2) throw std::domain_error("pin_set_log_weights: N must be at least 2");
    if (N > kEnumLimit)
        throw std::length_error("pin_set_log_weights: N > 22; use tau_estimate");
    if (epsilon < 0.0) throw std::domain_error("pin_set_log_weights: epsilon must be nonnegative");

    double base = log_partition_zero(N, pin_set{});
    std::uint32_t count = 1u << (N - 1);
    std::vector<double> w(count);
    double log_eps = std::log(epsilon);  // -inf at epsilon = 0 is intended
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        pin_set pins(mask_sites(mask), N, false);
        double lw = log_partition_zero(N, pins) - base;
        int k = std::popcount(mask);
        if (k > 0) lw += k * log_eps;
        w[mask] = lw;
    }
    return w;
}

double ratio_exact(int N, double epsilon) {
    if (N > kEnumLimit) throw std::length_error("ratio_exact: N > 22; use tau_estimate");
    return log_sum_exp(pin_set_log_weights(N, epsilon));
}

double pin_density_exact(int N, double epsilon) {
    std::vector<double> w = pin_set_log_weights(N, epsilon);
    double m = *std::max_element(w.begin(), w.end());
    double num = 0.0, den = 0.0;
    for (std::uint32_t mask = 0; mask < w.size(); ++mask) {
        double p = std::exp(w[mask] - m);
        num += std::popcount(mask) * p;
        den += p;
    }
    return num / den / N;
}

namespace {

// Geometric grid from floor to eps inclusive.
std::vector<double> geometric_grid(double floor, double eps, int nodes_per_decade) {
    if (eps <= floor) return {eps};
    double decades = std::log10(eps / floor);
    int n = std::max(1, static_cast<int>(std::ceil(decades * nodes_per_decade)));
    std::vector<double> grid(static_cast<size_t>(n + 1));
    for (int i = 0; i <= n; ++i)
        grid[static_cast<size_t>(i)] = floor * std::pow(eps / floor, static_cast<double>(i) / n);
    grid.back() = eps;
    return grid;
}

// Mean pin fraction over `sweeps` measurement sweeps after `burn` sweeps,
// continuing from the given state.
double measure_density(chain_state& s, double eps, long burn, long sweeps, rng& g) {
    for (long t = 0; t < burn; ++t) gibbs_sweep(s, eps, g);
    double acc = 0.0;
    for (long t = 0; t < sweeps; ++t) {
        gibbs_sweep(s, eps, g);
        acc += static_cast<double>(s.pin_count());
    }
    return acc / static_cast<double>(sweeps) / s.field.N;
}

struct mean_err {
    double mean = 0.0;
    double err = 0.0;
};

mean_err replica_stats(const std::vector<double>& x) {
    mean_err out;
    size_t n = x.size();
    for (double v : x) out.mean += v;
    out.mean /= static_cast<double>(n);
    if (n > 1) {
        double ss = 0.0;
        for (double v : x) ss += (v - out.mean) * (v - out.mean);
        out.err = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
    }
    return out;
}

}  // namespace

tau_estimate_result tau_estimate(double eps, const std::vector<int>& N_list,
                                 const ti_budget& budget) {
    if (!(eps > 0.0)) throw std::domain_error("tau_estimate: epsilon must be positive");
    if (N_list.empty()) throw std::domain_error("tau_estimate: empty N list");
    if (budget.replicas < 1 || budget.sweeps < 1)
        throw std::domain_error("tau_estimate: bad budget");

    std::vector<double> grid = geometric_grid(budget.eps_floor, eps, budget.nodes_per_decade);
    size_t M = grid.size();

    tau_estimate_result res;
    res.eps = eps;
    res.N_list = N_list;
    int N_max = *std::max_element(N_list.begin(), N_list.end());

    for (int N : N_list) {
        boundary_data zero_bc = boundary_data::clamped(0.0, 0.0, 0.0, 0.0);
        std::vector<std::vector<double>> dens(static_cast<size_t>(budget.replicas),
                                              std::vector<double>(M));
        for (int r = 0; r < budget.replicas; ++r) {
            std::uint64_t stream = (static_cast<std::uint64_t>(N) << 20) +
                                   static_cast<std::uint64_t>(r);
            rng g(budget.seed, stream);
            chain_state s(N, false);
            s.field.apply_boundary(zero_bc);
            // Anneal downward from the fully pinned state. At the top of the
            // ladder that state is the equilibrium up to O(N/eps) corrections,
            // and depinning relaxes through local moves, so every step stays a
            // small perturbation of equilibrium. Walking the ladder upward
            // instead would have to nucleate the pinned phase out of a spread
            // field whose long-wavelength modes relax far too slowly for
            // single-site dynamics, and the density would lag low across the
            // whole crossover window.
            for (int k = 1; k <= N - 1; ++k) s.pin_flag[static_cast<size_t>(k + 1)] = 1;
            for (size_t i = M; i-- > 0;)
                dens[static_cast<size_t>(r)][i] =
                    measure_density(s, grid[i], budget.burn_in, budget.sweeps, g);
        }

        // Per replica: closure below the grid floor plus trapezoid in log eps.
        std::vector<double> integrals(static_cast<size_t>(budget.replicas));
        for (int r = 0; r < budget.replicas; ++r) {
            const auto& d = dens[static_cast<size_t>(r)];
            double acc = d[0];  // integral over (0, floor] of a linear-in-eps density
            for (size_t i = 0; i + 1 < M; ++i)
                acc += 0.5 * (d[i] + d[i + 1]) * std::log(grid[i + 1] / grid[i]);
            integrals[static_cast<size_t>(r)] = acc;
        }
        mean_err st = replica_stats(integrals);
        res.tau_per_N.push_back(st.mean);
        res.err_per_N.push_back(st.err);
        res.exact_per_N.push_back(
            N <= kEnumLimit ? ratio_exact(N, eps) / N
                            : std::numeric_limits<double>::quiet_NaN());

        if (N == N_max) {
            res.nodes.resize(M);
            for (size_t i = 0; i < M; ++i) {
                std::vector<double> col(static_cast<size_t>(budget.replicas));
                for (int r = 0; r < budget.replicas; ++r) col[static_cast<size_t>(r)] =
                    dens[static_cast<size_t>(r)][i];
                mean_err ns = replica_stats(col);
                res.nodes[i] = {grid[i], ns.mean, ns.err};
            }
        }
    }

    size_t i_max = static_cast<size_t>(
        std::max_element(N_list.begin(), N_list.end()) - N_list.begin());
    res.tau_hat = res.tau_per_N[i_max];
    res.err = res.err_per_N[i_max];

    // Linear fit tau_N = A + B/N; intercept is the extrapolation.
    if (N_list.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        double n = static_cast<double>(N_list.size());
        for (size_t i = 0; i < N_list.size(); ++i) {
            double x = 1.0 / N_list[i];
            sx += x;
            sy += res.tau_per_N[i];
            sxx += x * x;
            sxy += x * res.tau_per_N[i];
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        res.extrapolated = (sy - slope * sx) / n;
    } else {
        res.extrapolated = res.tau_hat;
    }

    res.converged = true;
    for (size_t i = 0; i < res.err_per_N.size(); ++i)
        if (res.err_per_N[i] > std::max(0.05, 0.1 * std::abs(res.tau_per_N[i])))
            res.converged = false;
    return res;
}

std::vector<density_row> critical_region_scan(const std::vector<double>& eps_grid,
                                              const std::vector<int>& N_list,
                                              const ti_budget& budget) {
    std::vector<density_row> rows;
    boundary_data zero_bc = boundary_data::clamped(0.0, 0.0, 0.0, 0.0);
    for (int N : N_list) {
        for (size_t ei = 0; ei < eps_grid.size(); ++ei) {
            double eps = eps_grid[ei];
            if (eps < 0.0) throw std::domain_error("critical_region_scan: negative epsilon");
            density_row row;
            row.N = N;
            row.eps = eps;
            if (N <= 16) {
                row.density = pin_density_exact(N, eps);
                row.exact = true;
            } else if (eps == 0.0) {
                row.density = 0.0;
                row.exact = true;
            } else {
                std::vector<double> d(static_cast<size_t>(budget.replicas));
                for (int r = 0; r < budget.replicas; ++r) {
                    std::uint64_t stream = (static_cast<std::uint64_t>(N) << 40) ^
                                           (static_cast<std::uint64_t>(ei) << 16) ^
                                           static_cast<std::uint64_t>(r);
                    rng g(budget.seed, stream);
                    chain_state s(N, false);
                    s.field.apply_boundary(zero_bc);
                    d[static_cast<size_t>(r)] =
                        measure_density(s, eps, budget.burn_in, budget.sweeps, g);
                }
                mean_err st = replica_stats(d);
                row.density = st.mean;
                row.spread = st.err;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace pinlab
