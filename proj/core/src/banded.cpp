#include "pinlab/banded.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace pinlab {

banded_spd::banded_spd(int n_)
    : n(n_),
      d0(static_cast<size_t>(std::max(n_, 0)), 0.0),
      d1(static_cast<size_t>(std::max(n_ - 1, 0)), 0.0),
      d2(static_cast<size_t>(std::max(n_ - 2, 0)), 0.0) {}

double banded_spd::at(int i, int j) const {
    if (i < 0 || j < 0 || i >= n || j >= n) throw std::domain_error("banded_spd::at: index out of range");
    int lo = std::min(i, j), hi = std::max(i, j);
    switch (hi - lo) {
        case 0: return d0[static_cast<size_t>(lo)];
        case 1: return d1[static_cast<size_t>(lo)];
        case 2: return d2[static_cast<size_t>(lo)];
        default: return 0.0;
    }
}

void banded_spd::add(int i, int j, double v) {
    int lo = std::min(i, j), hi = std::max(i, j);
    if (lo < 0 || hi >= n) throw std::domain_error("banded_spd::add: index out of range");
    switch (hi - lo) {
        case 0: d0[static_cast<size_t>(lo)] += v; break;
        case 1: d1[static_cast<size_t>(lo)] += v; break;
        case 2: d2[static_cast<size_t>(lo)] += v; break;
        default: throw std::domain_error("banded_spd::add: entry outside bandwidth 2");
    }
}

banded_ldlt factorize(const banded_spd& a) {
    banded_ldlt f;
    f.n = a.n;
    f.d.assign(static_cast<size_t>(std::max(a.n, 0)), 0.0);
    f.l1.assign(static_cast<size_t>(std::max(a.n - 1, 0)), 0.0);
    f.l2.assign(static_cast<size_t>(std::max(a.n - 2, 0)), 0.0);

    for (int i = 0; i < a.n; ++i) {
        double di = a.d0[static_cast<size_t>(i)];
        if (i >= 1) di -= f.l1[static_cast<size_t>(i - 1)] * f.l1[static_cast<size_t>(i - 1)] * f.d[static_cast<size_t>(i - 1)];
        if (i >= 2) di -= f.l2[static_cast<size_t>(i - 2)] * f.l2[static_cast<size_t>(i - 2)] * f.d[static_cast<size_t>(i - 2)];
        if (!(di > 0.0)) throw std::runtime_error("banded factorization: nonpositive pivot");
        f.d[static_cast<size_t>(i)] = di;

        if (i + 1 < a.n) {
            double v = a.d1[static_cast<size_t>(i)];
            if (i >= 1) v -= f.l2[static_cast<size_t>(i - 1)] * f.l1[static_cast<size_t>(i - 1)] * f.d[static_cast<size_t>(i - 1)];
            f.l1[static_cast<size_t>(i)] = v / di;
        }
        if (i + 2 < a.n) {
            // no completed column overlaps entries (i+2, i), the band is too narrow
            f.l2[static_cast<size_t>(i)] = a.d2[static_cast<size_t>(i)] / di;
        }
    }
    return f;
}

double banded_ldlt::log_det() const {
    double s = 0.0;
    for (double p : d) s += std::log(p);
    return s;
}

void banded_ldlt::solve(std::span<double> x) const {
    if (static_cast<int>(x.size()) != n) throw std::domain_error("banded_ldlt::solve: size mismatch");
    // forward: L y = b
    for (int i = 0; i < n; ++i) {
        double v = x[static_cast<size_t>(i)];
        if (i >= 1) v -= l1[static_cast<size_t>(i - 1)] * x[static_cast<size_t>(i - 1)];
        if (i >= 2) v -= l2[static_cast<size_t>(i - 2)] * x[static_cast<size_t>(i - 2)];
        x[static_cast<size_t>(i)] = v;
    }
    // diagonal
    for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] /= d[static_cast<size_t>(i)];
    // backward: L^T x = y
    for (int i = n - 1; i >= 0; --i) {
        double v = x[static_cast<size_t>(i)];
        if (i + 1 < n) v -= l1[static_cast<size_t>(i)] * x[static_cast<size_t>(i + 1)];
        if (i + 2 < n) v -= l2[static_cast<size_t>(i)] * x[static_cast<size_t>(i + 2)];
        x[static_cast<size_t>(i)] = v;
    }
}

void banded_ldlt::solve_lt(std::span<double> x) const {
    if (static_cast<int>(x.size()) != n) throw std::domain_error("banded_ldlt::solve_lt: size mismatch");
    for (int i = n - 1; i >= 0; --i) {
        double v = x[static_cast<size_t>(i)];
        if (i + 1 < n) v -= l1[static_cast<size_t>(i)] * x[static_cast<size_t>(i + 1)];
        if (i + 2 < n) v -= l2[static_cast<size_t>(i)] * x[static_cast<size_t>(i + 2)];
        x[static_cast<size_t>(i)] = v;
    }
}

}  // namespace pinlab
