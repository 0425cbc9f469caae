#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pinlab/profile.hpp"

namespace pinlab {

// Continuum curvature minimiser with clamped ends on [0,1]:
// h(t) = a + alpha t + k t^2 + c t^3.
struct cubic_minimiser {
    double a = 0.0, alpha = 0.0, k = 0.0, c = 0.0;

    // (1/2) integral of h''^2 over [0,1], closed form.
    double energy() const { return 2.0 * k * k + 6.0 * k * c + 6.0 * c * c; }
    cubic_segment segment() const;
};

cubic_minimiser biharmonic_minimiser(const boundary_data& bc);

// Energy of the optimal cubic that leaves (a, alpha) at t=0 and lands flat
// on the axis at t=l, plus the forfeited reward tau*l on [0,l]:
// (6 a^2 + 6 a alpha l + 2 alpha^2 l^2) / l^3 + tau l.
double segment_energy_tau(double l, double a, double alpha, double tau);

enum class length_kind { first, second };

struct critical_length {
    double l = 0.0;
    length_kind kind = length_kind::first;
    bool feasible = false;  // l <= 1
};

// Local minima of the segment energy in l, closed forms per sign case.
// The first length attaches directly; the second (present only when
// a*alpha < 0 and tau <= alpha^4/(72 a^2)) crosses the axis once first.
std::vector<critical_length> critical_lengths(double tau, double a, double alpha);

// Number of interior zeros of the touching cubic on (0, l):
// one exactly when a*alpha < 0 and |alpha| l / |a| > 3, else zero.
int zero_count(double a, double alpha, double l);

enum class profile_kind { biharmonic, touch_left, touch_both, linear, zero };

std::string to_string(profile_kind k);

// A candidate minimiser of the rate function: piecewise cubic shape,
// attachment lengths where applicable, curvature energy and the Lebesgue
// measure of its zero set.
struct minimiser_descriptor {
    profile_kind kind = profile_kind::linear;
    piecewise_cubic shape;
    std::optional<double> l;  // left attachment length
    std::optional<double> r;  // right attachment length
    double energy = 0.0;
    double zero_measure = 0.0;
};

minimiser_descriptor make_zero();
minimiser_descriptor make_linear(double a, double alpha);
minimiser_descriptor make_touch_left(double a, double alpha, double l);
minimiser_descriptor make_touch_both(const boundary_data& bc, double l, double r);
minimiser_descriptor make_biharmonic(const boundary_data& bc);

// Rate value energy - tau * zero_measure.
double sigma_value(const minimiser_descriptor& d, double tau);

// Largest tau for which the crossing branch exists: alpha^4 / (72 a^2).
double crossing_branch_tau_max(double a, double alpha);

// Difference of segment energies at the two critical lengths; strictly
// decreasing in tau on its domain.
double delta_tau(double tau, double a, double alpha);

// Unique zero of delta_tau in (0, alpha^4/(72 a^2)]; requires a*alpha < 0.
// Throws std::domain_error("tau0: no sign change") when the difference
// never changes sign on the domain.
double tau0(double a, double alpha);

// Unique tau at which the free rate value of the branch profile crosses
// zero. Branch 1 always has a root; branch 2 returns +infinity when the
// crossing branch never reaches zero rate inside its domain.
double tau_star(double a, double alpha, int branch);

struct phase_report {
    std::vector<minimiser_descriptor> minimisers;  // all within tie tolerance
    std::string regime;
    bool degenerate = false;  // tie between distinct minimiser kinds
    double sigma_min = 0.0;
    std::string note;                      // structural remarks
    std::vector<critical_length> lengths;  // all computed lengths, incl. infeasible
};

// Tie tolerance on rate values used by the classifiers.
inline constexpr double kSigmaTieTol = 1e-9;

// Free right end: minimise over the linear profile and the feasible
// attachment profiles.
phase_report classify_free(double a, double alpha, double tau);

// Clamped symmetric data (a, alpha, a, -alpha): minimise over the interior
// cubic and the feasible two-sided attachment profiles.
phase_report classify_dirichlet_symmetric(double a, double alpha, double tau);

// General clamped data, numeric comparison only (no regime structure).
phase_report classify_dirichlet_numeric(const boundary_data& bc, double tau);

// Evaluate the descriptor's shape at M+1 equispaced points on [0,1].
std::vector<double> build_profile(const minimiser_descriptor& d, int M);

}  // namespace pinlab
