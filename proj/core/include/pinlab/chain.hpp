#pragma once

#include <optional>
#include <vector>

#include "pinlab/banded.hpp"

namespace pinlab {

// Macroscopic boundary data. Left height a and slope alpha are always
// present; right height b and slope beta are either both present
// (clamped right end) or both absent (free right end).
struct boundary_data {
    double a = 0.0;
    double alpha = 0.0;
    std::optional<double> b;
    std::optional<double> beta;

    bool clamped_right() const { return b.has_value(); }

    static boundary_data clamped(double a, double alpha, double b, double beta);
    static boundary_data free_right(double a, double alpha);
};

// Microscopic height configuration phi indexed -1..N+1 (N+3 slots).
// Boundary slots carry the scaled data: phi_{-1} = a N^2 - alpha N,
// phi_0 = a N^2, and for clamped right ends phi_N = b N^2,
// phi_{N+1} = b N^2 + beta N.
struct lattice_field {
    int N = 0;
    std::vector<double> v;  // size N+3, v[k+1] holds phi_k

    explicit lattice_field(int N_);

    double& at(int k) { return v[static_cast<size_t>(k + 1)]; }
    double at(int k) const { return v[static_cast<size_t>(k + 1)]; }

    void apply_boundary(const boundary_data& bc);  // writes the fixed slots
};

// Sorted set of interior sites held exactly at zero. Valid sites are
// 1..N-1 with a clamped right end and 1..N+1 with a free right end.
struct pin_set {
    std::vector<int> sites;  // strictly increasing

    pin_set() = default;
    pin_set(std::vector<int> s, int N, bool free_right);

    bool contains(int k) const;
    int size() const { return static_cast<int>(sites.size()); }
    bool empty() const { return sites.empty(); }
};

// Curvature energy sum_{k=l+1}^{r-1} (phi_{k+1} + phi_{k-1} - 2 phi_k)^2 / 2.
double hamiltonian(const lattice_field& f, int l, int r);
double hamiltonian(const lattice_field& f);  // full interval (-1, N+1)

// Hessian of the curvature energy restricted to the unpinned free sites,
// in compressed (free-site) indexing. Free sites are 1..N-1 minus pins for
// a clamped right end, 1..N+1 minus pins for a free right end.
banded_spd precision_matrix(int N, const pin_set& pins, bool free_right);

// log det of the unpinned clamped-end precision matrix:
// det = (1/12) (N+1)^2 N (N+2).
double log_det_closed_form(int N);

// log of the Gaussian integral over the free sites with zero boundary data
// and the given pins held at zero:
// ((N-1-|pins|)/2) log(2 pi) - (1/2) log det(precision).
double log_partition_zero(int N, const pin_set& pins);

// log partition with general boundary data: the zero-boundary value minus
// the curvature energy of the constrained minimiser.
double log_partition_bc(int N, const boundary_data& bc, const pin_set& pins);

// Unique minimiser of the curvature energy subject to the boundary slots
// and pinned sites; solves the normal equations on the free sites.
lattice_field discrete_minimiser(int N, const boundary_data& bc, const pin_set& pins);

// Variance of phi_k under the zero-boundary pinned Gaussian measure.
double field_variance(int N, const pin_set& pins, int k);

// Coefficients of h(t) = a + alpha_N t + k_N t^2 + c_N t^3 such that
// phi_k = N^2 h(k/N) is the unpinned clamped-end minimiser at size N.
// As N grows they converge to the continuum cubic coefficients with
// error O(1/N).
struct discrete_cubic {
    double a = 0.0;
    double alpha = 0.0;
    double k = 0.0;
    double c = 0.0;
};
discrete_cubic discrete_minimiser_coeffs(int N, const boundary_data& bc);

}  // namespace pinlab
