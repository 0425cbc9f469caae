#pragma once

#include <cstdint>
#include <vector>

#include "pinlab/chain.hpp"

namespace pinlab {

// Log of the pinned-to-plain partition ratio at zero boundary data,
// summed exactly over all 2^(N-1) pin subsets with log-sum-exp.
// Guarded to N <= 22; larger N must go through tau_estimate.
double ratio_exact(int N, double epsilon);

// Unnormalized log weight of every pin subset at zero boundary data:
// index is a bitmask over sites 1..N-1 (bit j <-> site j+1), value is
// |P| log(eps) + log Z(P) - log Z(empty). Enumeration backbone for
// ratio_exact and for chain-correctness tests.
std::vector<double> pin_set_log_weights(int N, double epsilon);

// Exact mean pin fraction E|P|/N at zero boundary data via enumeration.
double pin_density_exact(int N, double epsilon);

// Chain budget for thermodynamic integration.
struct ti_budget {
    int nodes_per_decade = 16;
    double eps_floor = 1e-3;  // geometric grid start
    long sweeps = 4000;
    long burn_in = 1000;
    int replicas = 4;
    std::uint64_t seed = 1;
};

struct ti_node {
    double eps = 0.0;
    double density = 0.0;  // mean pin fraction across replicas
    double spread = 0.0;   // standard error across replicas
};

struct tau_estimate_result {
    double eps = 0.0;
    std::vector<int> N_list;
    std::vector<double> tau_per_N;  // (1/N) log ratio estimates
    std::vector<double> err_per_N;  // replica standard errors
    double tau_hat = 0.0;           // value at the largest N
    double err = 0.0;
    double extrapolated = 0.0;  // linear fit in 1/N, intercept
    bool converged = true;
    std::vector<double> exact_per_N;  // enumeration reference where N <= 22, else NaN
    std::vector<ti_node> nodes;       // integrand trace at the largest N
};

// (1/N) log ratio by thermodynamic integration in log eps: the derivative
// of the log ratio in log eps equals the mean pin count, so the integral
// of the pin fraction over the geometric grid recovers the log ratio.
// Chains are warm-started along the eps ladder; replicas use independent
// RNG streams.
tau_estimate_result tau_estimate(double eps, const std::vector<int>& N_list,
                                 const ti_budget& budget);

struct density_row {
    int N = 0;
    double eps = 0.0;
    double density = 0.0;  // mean pin fraction
    double spread = 0.0;   // 0 for exact rows
    bool exact = false;
};

// Pin densities over a grid of (N, eps): exact enumeration where feasible,
// chain estimates otherwise. Used to bracket the critical pinning strength
// by the crossing from a vanishing to a non-vanishing trend in N.
std::vector<density_row> critical_region_scan(const std::vector<double>& eps_grid,
                                              const std::vector<int>& N_list,
                                              const ti_budget& budget);

}  // namespace pinlab
