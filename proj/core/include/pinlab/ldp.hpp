#pragma once

#include <functional>
#include <vector>

#include "pinlab/profile.hpp"
#include "pinlab/sampler.hpp"
#include "pinlab/variational.hpp"

namespace pinlab {

// (1/2) sum_{j=0}^{N} N^3 (h((j+1)/N) + h((j-1)/N) - 2 h(j/N))^2 over the
// grid values, extension slots used literally. For a profile derived from
// a field, N times this value reproduces the curvature energy exactly.
double rescaled_energy(const macro_profile& h);

struct rate_evaluation {
    double energy = 0.0;
    double zero_measure = 0.0;
    double tau_used = 0.0;
    double sigma = 0.0;  // energy - tau_used * zero_measure
};

// Zero-set measure of a sampled profile counts exact pinned atoms only,
// scaled by 1/N; interpolation zeros are never thresholded.
rate_evaluation evaluate_rate(const macro_profile& h, int pin_count, double tau);
rate_evaluation evaluate_rate(const minimiser_descriptor& d, double tau);

struct gamma_row {
    int N = 0;
    double discrete = 0.0;  // rescaled energy of the discretized profile
    double gap = 0.0;       // discrete minus continuum
};

struct gamma_report {
    double continuum = 0.0;  // (1/2) integral of hpp^2
    std::vector<gamma_row> rows;
    double order = 0.0;         // decay exponent of the gap, least squares
    bool lower_bounded = true;  // discrete >= continuum - envelope at every N
};

// Discretize a twice-differentiable profile at a ladder of N and compare
// the rescaled energies against the continuum curvature energy.
gamma_report gamma_convergence_check(const std::function<double(double)>& h,
                                     const std::function<double(double)>& hpp,
                                     const std::vector<int>& N_list);

// sup_l (l x - lambda(l)) by bracket expansion, grid scan and ternary
// refinement; lambda must be convex with superlinear growth at the needed x.
double legendre_conjugate(const std::function<double(double)>& lambda, double x);

// Composite rate sum (1/N) Lambda*(N^2 second difference). The default
// Gaussian conjugate x^2/2 makes this identical to rescaled_energy.
double mogulskii_rate(const macro_profile& h);
double mogulskii_rate(const macro_profile& h, const std::function<double(double)>& lambda);

struct concentration_row {
    int N = 0;
    double median_dist = 0.0;
    double q90_dist = 0.0;
    double mean_contact = 0.0;
    std::vector<double> coverage;  // per delta, fraction of samples within delta
};

struct concentration_result {
    std::vector<double> delta_grid;
    std::vector<concentration_row> rows;
};

// Sample chains at each N and record the sup-distance from the empirical
// profile to the nearest classified minimiser shape.
concentration_result concentration_experiment(const sampler_config& base,
                                              const phase_report& report,
                                              const std::vector<int>& N_list,
                                              const std::vector<double>& delta_grid,
                                              int replicas);

}  // namespace pinlab
