#include "pinlab/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pinlab {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;  // log(2 pi)

void require_size(int N) {
    if (N < 2) throw std::domain_error("chain: N must be at least 2");
}

// Free interior sites in increasing order: 1..N-1 (clamped) or 1..N+1 (free
// right end), minus pins. Returns the compressed index of each lattice site
// (-1 for fixed sites) and the number of free sites.
std::vector<int> free_site_index(int N, const pin_set& pins, bool free_right, int& n_free) {
    std::vector<int> idx(static_cast<size_t>(N + 3), -1);
    int last = free_right ? N + 1 : N - 1;
    int next = 0;
    for (int k = 1; k <= last; ++k) {
        if (pins.contains(k)) continue;
        idx[static_cast<size_t>(k + 1)] = next++;
    }
    n_free = next;
    return idx;
}

void check_pin_range(const pin_set& pins, int N, bool free_right) {
    int last = free_right ? N + 1 : N - 1;
    for (int s : pins.sites) {
        if (s < 1 || s > last) throw std::domain_error("pin_set: site out of range");
    }
}

}  // namespace

boundary_data boundary_data::clamped(double a, double alpha, double b, double beta) {
    boundary_data bc;
    bc.a = a;
    bc.alpha = alpha;
    bc.b = b;
    bc.beta = beta;
    return bc;
}

boundary_data boundary_data::free_right(double a, double alpha) {
    boundary_data bc;
    bc.a = a;
    bc.alpha = alpha;
    return bc;
}

lattice_field::lattice_field(int N_) : N(N_), v(static_cast<size_t>(N_ + 3), 0.0) {
    require_size(N_);
}

void lattice_field::apply_boundary(const boundary_data& bc) {
    double n = static_cast<double>(N);
    at(-1) = bc.a * n * n - bc.alpha * n;
    at(0) = bc.a * n * n;
    if (bc.clamped_right()) {
        at(N) = *bc.b * n * n;
        at(N + 1) = *bc.b * n * n + *bc.beta * n;
    }
}

pin_set::pin_set(std::vector<int> s, int N, bool free_right) : sites(std::move(s)) {
    std::sort(sites.begin(), sites.end());
    if (std::adjacent_find(sites.begin(), sites.end()) != sites.end())
        throw std::domain_error("pin_set: duplicate site");
    int last = free_right ? N + 1 : N - 1;
    for (int k : sites) {
        if (k < 1 || k > last) throw std::domain_error("pin_set: site out of range");
    }
}

bool pin_set::contains(int k) const {
    return std::binary_search(sites.begin(), sites.end(), k);
}

double hamiltonian(const lattice_field& f, int l, int r) {
    if (l < -1 || r > f.N + 1 || r - l < 2)
        throw std::domain_error("hamiltonian: bad interval");
    double h = 0.0;
    for (int k = l + 1; k <= r - 1; ++k) {
        double d = f.at(k + 1) + f.at(k - 1) - 2.0 * f.at(k);
        h += 0.5 * d * d;
    }
    return h;
}

double hamiltonian(const lattice_field& f) { return hamiltonian(f, -1, f.N + 1); }

banded_spd precision_matrix(int N, const pin_set& pins, bool free_right) {
    require_size(N);
    check_pin_range(pins, N, free_right);
    int n_free = 0;
    std::vector<int> idx = free_site_index(N, pins, free_right, n_free);

    banded_spd m(n_free);
    // Each curvature term (phi_{k-1} - 2 phi_k + phi_{k+1})^2 / 2 contributes
    // the outer product of its stencil restricted to free sites. Compressed
    // distances never exceed the lattice distance, so bandwidth 2 is kept.
    const int sten[3] = {-1, 0, 1};
    const double wgt[3] = {1.0, -2.0, 1.0};
    for (int k = 0; k <= N; ++k) {
        for (int u = 0; u < 3; ++u) {
            int su = k + sten[u];
            int iu = idx[static_cast<size_t>(su + 1)];
            if (iu < 0) continue;
            for (int w = u; w < 3; ++w) {
                int sw = k + sten[w];
                int iw = idx[static_cast<size_t>(sw + 1)];
                if (iw < 0) continue;
                m.add(iu, iw, wgt[u] * wgt[w]);
            }
        }
    }
    return m;
}

double log_det_closed_form(int N) {
    require_size(N);
    double n = static_cast<double>(N);
    return std::log((n + 1.0) * (n + 1.0) * n * (n + 2.0) / 12.0);
}

namespace {

double log_partition_zero_ctx(int N, const pin_set& pins, bool free_right) {
    int dim = (free_right ? N + 1 : N - 1) - pins.size();
    if (dim == 0) return 0.0;
    banded_ldlt f = factorize(precision_matrix(N, pins, free_right));
    return 0.5 * static_cast<double>(dim) * kLog2Pi - 0.5 * f.log_det();
}

}  // namespace

double log_partition_zero(int N, const pin_set& pins) {
    require_size(N);
    check_pin_range(pins, N, false);
    return log_partition_zero_ctx(N, pins, false);
}

double log_partition_bc(int N, const boundary_data& bc, const pin_set& pins) {
    require_size(N);
    bool fr = !bc.clamped_right();
    check_pin_range(pins, N, fr);
    return log_partition_zero_ctx(N, pins, fr) - hamiltonian(discrete_minimiser(N, bc, pins));
}

lattice_field discrete_minimiser(int N, const boundary_data& bc, const pin_set& pins) {
    require_size(N);
    bool fr = !bc.clamped_right();
    check_pin_range(pins, N, fr);

    lattice_field out(N);
    out.apply_boundary(bc);
    for (int s : pins.sites) out.at(s) = 0.0;

    int n_free = 0;
    std::vector<int> idx = free_site_index(N, pins, fr, n_free);
    if (n_free == 0) return out;

    banded_spd m = precision_matrix(N, pins, fr);

    // Gradient of the energy at the all-zero free configuration: each term
    // couples the free stencil entries to the fixed (boundary or pinned) ones.
    std::vector<double> g(static_cast<size_t>(n_free), 0.0);
    const int sten[3] = {-1, 0, 1};
    const double wgt[3] = {1.0, -2.0, 1.0};
    for (int k = 0; k <= N; ++k) {
        double fixed_part = 0.0;
        for (int u = 0; u < 3; ++u) {
            int su = k + sten[u];
            if (idx[static_cast<size_t>(su + 1)] < 0) fixed_part += wgt[u] * out.at(su);
        }
        if (fixed_part == 0.0) continue;
        for (int u = 0; u < 3; ++u) {
            int su = k + sten[u];
            int iu = idx[static_cast<size_t>(su + 1)];
            if (iu >= 0) g[static_cast<size_t>(iu)] -= wgt[u] * fixed_part;
        }
    }

    banded_ldlt f = factorize(m);
    f.solve(g);

    int last = fr ? N + 1 : N - 1;
    for (int k = 1; k <= last; ++k) {
        int i = idx[static_cast<size_t>(k + 1)];
        if (i >= 0) out.at(k) = g[static_cast<size_t>(i)];
    }
    return out;
}

double field_variance(int N, const pin_set& pins, int k) {
    require_size(N);
    check_pin_range(pins, N, false);
    if (k < 1 || k > N - 1) throw std::domain_error("field_variance: site out of range");
    if (pins.contains(k)) throw std::domain_error("field_variance: site is pinned");

    int n_free = 0;
    std::vector<int> idx = free_site_index(N, pins, false, n_free);
    banded_ldlt f = factorize(precision_matrix(N, pins, false));
    std::vector<double> e(static_cast<size_t>(n_free), 0.0);
    int i = idx[static_cast<size_t>(k + 1)];
    e[static_cast<size_t>(i)] = 1.0;
    f.solve(e);
    return e[static_cast<size_t>(i)];
}

discrete_cubic discrete_minimiser_coeffs(int N, const boundary_data& bc) {
    require_size(N);
    if (!bc.clamped_right())
        throw std::domain_error("discrete_minimiser_coeffs: clamped right end required");
    double n = static_cast<double>(N);
    double a = bc.a, al = bc.alpha, b = *bc.b, be = *bc.beta;
    double den = (n + 1.0) * (n + 2.0);
    discrete_cubic out;
    out.a = a;
    out.alpha = (2.0 * b - a * (2.0 + 3.0 * n) + n * (3.0 * b + al * (n + 1.0) - be)) / den;
    out.k = n * (-al + be + n * (3.0 * (b - a) - 2.0 * al - be)) / den;
    out.c = n * n * (2.0 * (a - b) + al + be) / den;
    return out;
}

}  // namespace pinlab
