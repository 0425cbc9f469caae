#pragma once

#include <span>
#include <vector>

namespace pinlab {

// Symmetric positive definite matrix with half-bandwidth at most 2,
// stored by diagonals. d1[i] = A(i+1,i), d2[i] = A(i+2,i).
struct banded_spd {
    int n = 0;
    std::vector<double> d0;  // main diagonal, size n
    std::vector<double> d1;  // first off-diagonal, size max(n-1,0)
    std::vector<double> d2;  // second off-diagonal, size max(n-2,0)

    explicit banded_spd(int n_ = 0);

    double at(int i, int j) const;       // general accessor, 0 outside the band
    void add(int i, int j, double v);    // accumulate into A(i,j)=A(j,i); |i-j|<=2 required
};

// Root-free Cholesky factorization A = L D L^T with unit lower-triangular L
// sharing the bandwidth of A.
struct banded_ldlt {
    int n = 0;
    std::vector<double> d;   // pivots D(i) > 0
    std::vector<double> l1;  // L(i+1,i)
    std::vector<double> l2;  // L(i+2,i)

    double log_det() const;              // sum of log pivots
    void solve(std::span<double> x) const;       // in place, A x = b
    void solve_lt(std::span<double> x) const;    // in place, L^T x = b (for sampling)
};

// Factorize; throws std::runtime_error if a pivot is not strictly positive
// (matrix not positive definite, cannot occur for valid model inputs).
banded_ldlt factorize(const banded_spd& a);

}  // namespace pinlab
