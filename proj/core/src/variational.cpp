#include "pinlab/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace pinlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double bisect(double lo, double hi, double tol, const auto& f) {
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

cubic_segment cubic_minimiser::segment() const {
    cubic_segment s;
    s.t0 = 0.0;
    s.t1 = 1.0;
    s.c0 = a;
    s.c1 = alpha;
    s.c2 = k;
    s.c3 = c;
    return s;
}

cubic_minimiser biharmonic_minimiser(const boundary_data& bc) {
    if (!bc.clamped_right())
        throw std::domain_error("biharmonic_minimiser: clamped right end required");
    cubic_minimiser m;
    m.a = bc.a;
    m.alpha = bc.alpha;
    m.k = 3.0 * (*bc.b - bc.a) - 2.0 * bc.alpha - *bc.beta;
    m.c = (bc.alpha + *bc.beta) - 2.0 * (*bc.b - bc.a);
    return m;
}

double segment_energy_tau(double l, double a, double alpha, double tau) {
    if (!(l > 0.0)) throw std::domain_error("segment_energy_tau: length must be positive");
    if (tau < 0.0) throw std::domain_error("segment_energy_tau: tau must be nonnegative");
    return (6.0 * a * a + 6.0 * a * alpha * l + 2.0 * alpha * alpha * l * l) / (l * l * l) + tau * l;
}

std::vector<critical_length> critical_lengths(double tau, double a, double alpha) {
    if (!(tau > 0.0)) throw std::domain_error("critical_lengths: tau must be positive");
    std::vector<critical_length> out;
    if (a == 0.0 && alpha == 0.0) return out;

    auto push = [&out](double l, length_kind kind) {
        out.push_back({l, kind, l <= 1.0});
    };

    if (alpha == 0.0) {
        push(std::sqrt(std::abs(a)) * std::pow(18.0 / tau, 0.25), length_kind::first);
        return out;
    }
    if (a == 0.0) {
        push(std::sqrt(2.0 / tau) * std::abs(alpha), length_kind::first);
        return out;
    }

    double u = std::sqrt(2.0 * tau);
    double aa = std::abs(a), al = std::abs(alpha);
    if (a * alpha > 0.0) {
        push((al + std::sqrt(al * al + 6.0 * aa * u)) / u, length_kind::first);
    } else {
        push((-al + std::sqrt(al * al + 6.0 * aa * u)) / u, length_kind::first);
        // Clamp the discriminant: at the cap tau = alpha^4/(72 a^2) it is an
        // exact zero that rounding can push slightly negative.
        double disc = al * al - 6.0 * aa * u;
        if (disc > -1e-12 * al * al)
            push((al + std::sqrt(std::max(disc, 0.0))) / u, length_kind::second);
    }
    return out;
}

int zero_count(double a, double alpha, double l) {
    if (!(l > 0.0)) throw std::domain_error("zero_count: length must be positive");
    if (a == 0.0) return 0;
    if (a * alpha >= 0.0) return 0;
    return (std::abs(alpha) * l / std::abs(a) > 3.0) ? 1 : 0;
}

std::string to_string(profile_kind k) {
    switch (k) {
        case profile_kind::biharmonic: return "biharmonic";
        case profile_kind::touch_left: return "touch-left";
        case profile_kind::touch_both: return "touch-both";
        case profile_kind::linear: return "linear";
        case profile_kind::zero: return "zero";
    }
    return "unknown";
}

minimiser_descriptor make_zero() {
    minimiser_descriptor d;
    d.kind = profile_kind::zero;
    cubic_segment s;
    s.t0 = 0.0;
    s.t1 = 1.0;
    d.shape.pieces.push_back(s);
    d.energy = 0.0;
    d.zero_measure = 1.0;
    return d;
}

minimiser_descriptor make_linear(double a, double alpha) {
    if (a == 0.0 && alpha == 0.0) return make_zero();
    minimiser_descriptor d;
    d.kind = profile_kind::linear;
    cubic_segment s;
    s.t0 = 0.0;
    s.t1 = 1.0;
    s.c0 = a;
    s.c1 = alpha;
    d.shape.pieces.push_back(s);
    d.energy = 0.0;
    d.zero_measure = 0.0;
    return d;
}

minimiser_descriptor make_touch_left(double a, double alpha, double l) {
    if (!(l > 0.0) || l > 1.0) throw std::domain_error("make_touch_left: length outside (0,1]");
    minimiser_descriptor d;
    d.kind = profile_kind::touch_left;
    d.l = l;
    d.shape.pieces.push_back(touch_left_segment(a, alpha, l));
    d.energy = d.shape.bend_energy();
    d.zero_measure = 1.0 - l;
    return d;
}

minimiser_descriptor make_touch_both(const boundary_data& bc, double l, double r) {
    if (!bc.clamped_right())
        throw std::domain_error("make_touch_both: clamped right end required");
    bool left_zero = (bc.a == 0.0 && bc.alpha == 0.0);
    bool right_zero = (*bc.b == 0.0 && *bc.beta == 0.0);
    if (l < 0.0 || r < 0.0 || l + r > 1.0)
        throw std::domain_error("make_touch_both: lengths violate l + r <= 1");
    if (l == 0.0 && !left_zero)
        throw std::domain_error("make_touch_both: zero left length needs zero left data");
    if (r == 0.0 && !right_zero)
        throw std::domain_error("make_touch_both: zero right length needs zero right data");

    minimiser_descriptor d;
    d.kind = profile_kind::touch_both;
    d.l = l;
    d.r = r;
    if (l > 0.0) d.shape.pieces.push_back(touch_left_segment(bc.a, bc.alpha, l));
    if (r > 0.0) d.shape.pieces.push_back(touch_right_segment(*bc.b, *bc.beta, r));
    d.energy = d.shape.bend_energy();
    d.zero_measure = 1.0 - l - r;
    return d;
}

minimiser_descriptor make_biharmonic(const boundary_data& bc) {
    cubic_minimiser m = biharmonic_minimiser(bc);
    if (m.a == 0.0 && m.alpha == 0.0 && m.k == 0.0 && m.c == 0.0) return make_zero();
    minimiser_descriptor d;
    d.kind = profile_kind::biharmonic;
    d.shape.pieces.push_back(m.segment());
    d.energy = m.energy();
    d.zero_measure = 0.0;
    return d;
}

double sigma_value(const minimiser_descriptor& d, double tau) {
    return d.energy - tau * d.zero_measure;
}

double crossing_branch_tau_max(double a, double alpha) {
    if (a == 0.0) throw std::domain_error("crossing_branch_tau_max: requires a != 0");
    double a2 = a * a;
    return alpha * alpha * alpha * alpha / (72.0 * a2);
}

double delta_tau(double tau, double a, double alpha) {
    if (!(a * alpha < 0.0)) throw std::domain_error("delta_tau: requires a*alpha < 0");
    auto ls = critical_lengths(tau, a, alpha);
    if (ls.size() != 2) throw std::domain_error("delta_tau: crossing length absent at this tau");
    return segment_energy_tau(ls[0].l, a, alpha, tau) - segment_energy_tau(ls[1].l, a, alpha, tau);
}

double tau0(double a, double alpha) {
    if (!(a * alpha < 0.0)) throw std::domain_error("tau0: requires a*alpha < 0");
    double tmax = crossing_branch_tau_max(a, alpha);
    auto dd = [&](double t) { return delta_tau(t, a, alpha); };
    double lo = tmax * 1e-9;
    if (!(dd(lo) > 0.0)) throw std::domain_error("tau0: no sign change");
    if (!(dd(tmax) < 0.0)) throw std::domain_error("tau0: no sign change");
    return bisect(lo, tmax, 1e-10 * tmax, dd);
}

namespace {

double length_of_branch(double tau, double a, double alpha, int branch) {
    auto ls = critical_lengths(tau, a, alpha);
    for (const auto& cl : ls) {
        if (branch == 1 && cl.kind == length_kind::first) return cl.l;
        if (branch == 2 && cl.kind == length_kind::second) return cl.l;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

double tau_star(double a, double alpha, int branch) {
    if (branch != 1 && branch != 2) throw std::domain_error("tau_star: branch must be 1 or 2");
    if (a == 0.0 && alpha == 0.0) throw std::domain_error("tau_star: zero boundary data");

    if (branch == 1) {
        // The free rate of the branch profile rises from 0+, peaks where the
        // attachment length passes 1, then falls linearly to -infinity.
        auto f = [&](double t) { return segment_energy_tau(length_of_branch(t, a, alpha, 1), a, alpha, t) - t; };
        double lo = 1e-8;
        while (!(f(lo) > 0.0) && lo > 1e-300) lo *= 1e-2;
        double hi = 1.0;
        while (f(hi) > 0.0) {
            hi *= 2.0;
            if (hi > 1e300) throw std::runtime_error("tau_star: bracket not found");
        }
        return bisect(lo, hi, 1e-12 * hi, f);
    }

    // Crossing branch: exists only for opposite signs and below the domain cap.
    if (!(a * alpha < 0.0)) return kInf;
    double tmax = crossing_branch_tau_max(a, alpha);
    auto f = [&](double t) {
        double l = length_of_branch(t, a, alpha, 2);
        if (std::isnan(l)) return kInf;
        return segment_energy_tau(l, a, alpha, t) - t;
    };
    if (!(f(tmax) < 0.0)) return kInf;
    // The rate starts at zero from above as tau -> 0, so halving from the cap
    // reaches a positive value below the unique root.
    double lo = 0.5 * tmax;
    while (!(f(lo) > 0.0)) {
        lo *= 0.5;
        if (lo < tmax * 1e-300) throw std::runtime_error("tau_star: bracket not found");
    }
    return bisect(lo, tmax, 1e-12 * tmax, f);
}

namespace {

struct candidate {
    minimiser_descriptor d;
    double sigma;
};

// Collect the winners within tie tolerance; set regime / degenerate / note.
phase_report assemble_report(std::vector<candidate> cands,
                             const std::vector<critical_length>& lengths) {
    phase_report rep;
    rep.lengths = lengths;
    double best = kInf;
    for (const auto& c : cands) best = std::min(best, c.sigma);
    rep.sigma_min = best;
    for (auto& c : cands)
        if (c.sigma <= best + kSigmaTieTol) rep.minimisers.push_back(std::move(c.d));
    return rep;
}

std::string free_label(const minimiser_descriptor& d, const std::vector<critical_length>& lengths) {
    switch (d.kind) {
        case profile_kind::zero: return "zero-boundary";
        case profile_kind::linear: return "detached";
        case profile_kind::touch_left: {
            for (const auto& cl : lengths) {
                if (d.l && std::abs(cl.l - *d.l) < 1e-12)
                    return cl.kind == length_kind::first ? "attached-direct" : "attached-crossing";
            }
            return "attached";
        }
        default: return to_string(d.kind);
    }
}

}  // namespace

phase_report classify_free(double a, double alpha, double tau) {
    if (tau < 0.0) throw std::domain_error("classify_free: tau must be nonnegative");

    phase_report rep;
    if (a == 0.0 && alpha == 0.0) {
        rep.minimisers.push_back(make_zero());
        rep.sigma_min = -tau;
        rep.regime = "zero-boundary";
        return rep;
    }

    std::vector<candidate> cands;
    cands.push_back({make_linear(a, alpha), 0.0});
    std::vector<critical_length> lengths;
    if (tau > 0.0) {
        lengths = critical_lengths(tau, a, alpha);
        for (const auto& cl : lengths) {
            if (!cl.feasible) continue;
            minimiser_descriptor d = make_touch_left(a, alpha, cl.l);
            cands.push_back({std::move(d), segment_energy_tau(cl.l, a, alpha, tau) - tau});
        }
    }

    rep = assemble_report(std::move(cands), lengths);

    std::set<std::string> labels;
    for (const auto& d : rep.minimisers) labels.insert(free_label(d, rep.lengths));
    rep.degenerate = labels.size() > 1;
    if (labels.size() == 1) {
        rep.regime = *labels.begin();
    } else {
        std::string joined;
        for (const auto& s : labels) joined += (joined.empty() ? "" : "+") + s;
        rep.regime = "boundary:" + joined;
    }

    if (a != 0.0 && a * alpha < 0.0) {
        double tmax = crossing_branch_tau_max(a, alpha);
        if (tau > tmax) {
            rep.note = "crossing-branch-absent-at-tau";
        } else if (!(delta_tau(tmax * 1e-9, a, alpha) > 0.0) || !(delta_tau(tmax, a, alpha) < 0.0)) {
            rep.note = "no-crossing-branch";
        }
    }
    return rep;
}

phase_report classify_dirichlet_symmetric(double a, double alpha, double tau) {
    if (tau < 0.0) throw std::domain_error("classify_dirichlet_symmetric: tau must be nonnegative");
    boundary_data bc = boundary_data::clamped(a, alpha, a, -alpha);

    phase_report rep;
    if (a == 0.0 && alpha == 0.0) {
        rep.minimisers.push_back(make_zero());
        rep.sigma_min = -tau;
        rep.regime = "zero-boundary";
        return rep;
    }

    std::vector<candidate> cands;
    {
        minimiser_descriptor h = make_biharmonic(bc);
        double s = sigma_value(h, tau);
        cands.push_back({std::move(h), s});
    }
    std::vector<critical_length> lengths;
    bool crossing_candidate = false;
    if (tau > 0.0) {
        // Both ends carry the same attachment problem: the right data
        // (b, beta) = (a, -alpha) mirror onto (a, alpha).
        lengths = critical_lengths(tau, a, alpha);
        for (const auto& li : lengths) {
            for (const auto& lj : lengths) {
                if (!li.feasible || !lj.feasible) continue;
                if (li.l + lj.l > 1.0) continue;
                minimiser_descriptor d = make_touch_both(bc, li.l, lj.l);
                double s = segment_energy_tau(li.l, a, alpha, tau) +
                           segment_energy_tau(lj.l, a, alpha, tau) - tau;
                if (li.kind == length_kind::second || lj.kind == length_kind::second)
                    crossing_candidate = true;
                cands.push_back({std::move(d), s});
            }
        }
    }

    rep = assemble_report(std::move(cands), lengths);

    auto pair_label = [&](const minimiser_descriptor& d) -> std::string {
        if (d.kind == profile_kind::biharmonic) return "interior";
        if (d.kind != profile_kind::touch_both) return to_string(d.kind);
        auto kind_of = [&](double l) {
            for (const auto& cl : rep.lengths)
                if (std::abs(cl.l - l) < 1e-12) return cl.kind;
            return length_kind::first;
        };
        length_kind kl = kind_of(*d.l), kr = kind_of(*d.r);
        if (kl == length_kind::first && kr == length_kind::first) return "attached-direct-pair";
        if (kl == length_kind::second && kr == length_kind::second) return "attached-crossing-pair";
        return "attached-mixed-pair";
    };

    std::set<std::string> labels;
    for (const auto& d : rep.minimisers) labels.insert(pair_label(d));
    rep.degenerate = labels.size() > 1;
    if (labels.size() == 1) {
        rep.regime = *labels.begin();
    } else {
        std::string joined;
        for (const auto& s : labels) joined += (joined.empty() ? "" : "+") + s;
        rep.regime = "boundary:" + joined;
    }
    if (crossing_candidate) rep.note = "two-branch-window";
    return rep;
}

phase_report classify_dirichlet_numeric(const boundary_data& bc, double tau) {
    if (!bc.clamped_right())
        throw std::domain_error("classify_dirichlet_numeric: clamped right end required");
    if (tau < 0.0) throw std::domain_error("classify_dirichlet_numeric: tau must be nonnegative");

    double b = *bc.b, beta = *bc.beta;
    bool left_zero = (bc.a == 0.0 && bc.alpha == 0.0);
    bool right_zero = (b == 0.0 && beta == 0.0);

    phase_report rep;
    if (left_zero && right_zero) {
        rep.minimisers.push_back(make_zero());
        rep.sigma_min = -tau;
        rep.regime = "zero-boundary";
        return rep;
    }

    std::vector<candidate> cands;
    {
        minimiser_descriptor h = make_biharmonic(bc);
        double s = sigma_value(h, tau);
        cands.push_back({std::move(h), s});
    }

    if (tau > 0.0) {
        // Right-end attachment mirrors onto left-end data (b, -beta).
        std::vector<double> ls, rs;
        if (left_zero) {
            ls.push_back(0.0);
        } else {
            for (const auto& cl : critical_lengths(tau, bc.a, bc.alpha))
                if (cl.feasible) ls.push_back(cl.l);
        }
        if (right_zero) {
            rs.push_back(0.0);
        } else {
            for (const auto& cl : critical_lengths(tau, b, -beta))
                if (cl.feasible) rs.push_back(cl.l);
        }
        for (double l : ls) {
            for (double r : rs) {
                if (l + r > 1.0) continue;
                minimiser_descriptor d = make_touch_both(bc, l, r);
                double s = sigma_value(d, tau);
                cands.push_back({std::move(d), s});
            }
        }
    }

    rep = assemble_report(std::move(cands), {});
    rep.regime = "numeric";
    std::set<std::string> kinds;
    for (const auto& d : rep.minimisers) kinds.insert(to_string(d.kind));
    rep.degenerate = kinds.size() > 1;
    return rep;
}

std::vector<double> build_profile(const minimiser_descriptor& d, int M) {
    if (M < 2) throw std::domain_error("build_profile: need at least 2 intervals");
    std::vector<double> out(static_cast<size_t>(M + 1));
    for (int j = 0; j <= M; ++j) out[static_cast<size_t>(j)] = d.shape.value(static_cast<double>(j) / M);
    return out;
}

}  // namespace pinlab
