#pragma once

#include <vector>

#include "pinlab/chain.hpp"

namespace pinlab {

// One cubic piece h(t) = c0 + c1 t + c2 t^2 + c3 t^3 on [t0, t1],
// coefficients in the global variable t.
struct cubic_segment {
    double t0 = 0.0, t1 = 0.0;
    double c0 = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0;

    double value(double t) const { return ((c3 * t + c2) * t + c1) * t + c0; }
    double slope(double t) const { return (3.0 * c3 * t + 2.0 * c2) * t + c1; }
    double curvature(double t) const { return 6.0 * c3 * t + 2.0 * c2; }

    // (1/2) integral over [t0,t1] of (2 c2 + 6 c3 t)^2 dt, exact.
    double bend_energy() const;
};

// Cubic clamped to (value a, slope alpha) at t=0 and to (0, 0) at t=l.
cubic_segment touch_left_segment(double a, double alpha, double l);

// Cubic clamped to (0, 0) at t=1-r and to (value b, slope beta) at t=1.
cubic_segment touch_right_segment(double b, double beta, double r);

// Cubic clamped to (a, alpha) at t=0 and (b, beta) at t=1.
cubic_segment clamped_segment(double a, double alpha, double b, double beta);

// Piecewise cubic on [0,1]; gaps between segments evaluate to zero.
struct piecewise_cubic {
    std::vector<cubic_segment> pieces;  // disjoint, increasing

    double value(double t) const;
    double slope(double t) const;
    double bend_energy() const;  // sum over pieces
};

// Rescaled height profile: values of h at grid points k/N for k=-1..N+1,
// stored like lattice_field with two extension slots carrying the
// boundary-slope information.
struct macro_profile {
    int N = 0;
    std::vector<double> v;  // size N+3, v[k+1] holds h(k/N)

    explicit macro_profile(int N_);

    double& at(int k) { return v[static_cast<size_t>(k + 1)]; }
    double at(int k) const { return v[static_cast<size_t>(k + 1)]; }

    // Piecewise-linear interpolation through the grid values on [0,1].
    double interp(double t) const;
};

// h_N(k/N) = phi_k / N^2 including the extension slots.
macro_profile empirical_profile(const lattice_field& f);

// Samples a smooth function literally at k/N for k=-1..N+1.
template <class F>
macro_profile discretize_profile(F&& h, int N) {
    macro_profile out(N);
    for (int k = -1; k <= N + 1; ++k) out.at(k) = h(static_cast<double>(k) / N);
    return out;
}

// Sup distance on [0,1] between the linear interpolation of h and a
// reference function, evaluated on the grid refined by midpoints.
template <class F>
double sup_distance(const macro_profile& h, F&& ref) {
    double best = 0.0;
    int M = 2 * h.N;
    for (int j = 0; j <= M; ++j) {
        double t = static_cast<double>(j) / M;
        double d = h.interp(t) - ref(t);
        if (d < 0) d = -d;
        if (d > best) best = d;
    }
    return best;
}

}  // namespace pinlab
