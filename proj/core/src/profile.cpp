#include "pinlab/profile.hpp"

#include <cmath>
#include <stdexcept>

namespace pinlab {

double cubic_segment::bend_energy() const {
    double dt1 = t1 - t0;
    double dt2 = t1 * t1 - t0 * t0;
    double dt3 = t1 * t1 * t1 - t0 * t0 * t0;
    return 0.5 * (4.0 * c2 * c2 * dt1 + 12.0 * c2 * c3 * dt2 + 12.0 * c3 * c3 * dt3);
}

namespace {

// Coefficients of g(p + q t) for a cubic g, plus the interval in t.
cubic_segment compose_affine(double g0, double g1, double g2, double g3,
                             double p, double q, double t0, double t1) {
    cubic_segment s;
    s.t0 = t0;
    s.t1 = t1;
    s.c0 = g0 + g1 * p + g2 * p * p + g3 * p * p * p;
    s.c1 = q * (g1 + 2.0 * g2 * p + 3.0 * g3 * p * p);
    s.c2 = q * q * (g2 + 3.0 * g3 * p);
    s.c3 = q * q * q * g3;
    return s;
}

}  // namespace

cubic_segment touch_left_segment(double a, double alpha, double l) {
    if (!(l > 0.0)) throw std::domain_error("touch_left_segment: length must be positive");
    // On the unit interval s = t/l the clamped data are (a, alpha*l) and (0,0).
    double kt = -3.0 * a - 2.0 * alpha * l;
    double ct = 2.0 * a + alpha * l;
    return compose_affine(a, alpha * l, kt, ct, 0.0, 1.0 / l, 0.0, l);
}

cubic_segment touch_right_segment(double b, double beta, double r) {
    if (!(r > 0.0)) throw std::domain_error("touch_right_segment: length must be positive");
    // Mirror: g(s) = h(1 - r s) has clamped data (b, -beta*r) and (0,0).
    double kt = -3.0 * b + 2.0 * beta * r;
    double ct = 2.0 * b - beta * r;
    return compose_affine(b, -beta * r, kt, ct, 1.0 / r, -1.0 / r, 1.0 - r, 1.0);
}

cubic_segment clamped_segment(double a, double alpha, double b, double beta) {
    cubic_segment s;
    s.t0 = 0.0;
    s.t1 = 1.0;
    s.c0 = a;
    s.c1 = alpha;
    s.c2 = 3.0 * (b - a) - 2.0 * alpha - beta;
    s.c3 = (alpha + beta) - 2.0 * (b - a);
    return s;
}

double piecewise_cubic::value(double t) const {
    for (const auto& s : pieces) {
        if (t >= s.t0 - 1e-15 && t <= s.t1 + 1e-15) return s.value(t);
    }
    return 0.0;
}

double piecewise_cubic::slope(double t) const {
    for (const auto& s : pieces) {
        if (t >= s.t0 - 1e-15 && t <= s.t1 + 1e-15) return s.slope(t);
    }
    return 0.0;
}

double piecewise_cubic::bend_energy() const {
    double e = 0.0;
    for (const auto& s : pieces) e += s.bend_energy();
    return e;
}

macro_profile::macro_profile(int N_) : N(N_), v(static_cast<size_t>(N_ + 3), 0.0) {
    if (N_ < 2) throw std::domain_error("macro_profile: N must be at least 2");
}

double macro_profile::interp(double t) const {
    double x = t * N;
    int k = static_cast<int>(std::floor(x));
    if (k < 0) k = 0;
    if (k > N - 1) k = N - 1;
    double frac = x - k;
    return at(k) * (1.0 - frac) + at(k + 1) * frac;
}

macro_profile empirical_profile(const lattice_field& f) {
    macro_profile out(f.N);
    double n2 = static_cast<double>(f.N) * f.N;
    for (int k = -1; k <= f.N + 1; ++k) out.at(k) = f.at(k) / n2;
    return out;
}

}  // namespace pinlab
