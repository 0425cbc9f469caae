#include "pinlab/ldp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pinlab {

double rescaled_energy(const macro_profile& h) {
    int N = h.N;
    if (static_cast<int>(h.v.size()) != N + 3)
        throw std::domain_error("rescaled_energy: profile missing extension slots");
    double n3 = static_cast<double>(N) * N * N;
    double acc = 0.0;
    for (int j = 0; j <= N; ++j) {
        double d2 = h.at(j + 1) + h.at(j - 1) - 2.0 * h.at(j);
        acc += d2 * d2;
    }
    return 0.5 * n3 * acc;
}

rate_evaluation evaluate_rate(const macro_profile& h, int pin_count, double tau) {
    rate_evaluation r;
    r.energy = rescaled_energy(h);
    r.zero_measure = static_cast<double>(pin_count) / h.N;
    r.tau_used = tau;
    r.sigma = r.energy - tau * r.zero_measure;
    return r;
}

rate_evaluation evaluate_rate(const minimiser_descriptor& d, double tau) {
    rate_evaluation r;
    r.energy = d.energy;
    r.zero_measure = d.zero_measure;
    r.tau_used = tau;
    r.sigma = r.energy - tau * r.zero_measure;
    return r;
}

gamma_report gamma_convergence_check(const std::function<double(double)>& h,
                                     const std::function<double(double)>& hpp,
                                     const std::vector<int>& N_list) {
    gamma_report rep;

    // Continuum curvature energy by composite Simpson on hpp^2.
    const int m = 2048;
    double s = 0.0;
    for (int j = 0; j <= m; ++j) {
        double t = static_cast<double>(j) / m;
        double f = hpp(t) * hpp(t);
        double w = (j == 0 || j == m) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        s += w * f;
    }
    rep.continuum = 0.5 * s / (3.0 * m);

    for (int N : N_list) {
        macro_profile p = discretize_profile(h, N);
        double e = rescaled_energy(p);
        rep.rows.push_back({N, e, e - rep.continuum});
        if (e < rep.continuum - 1e-7 * (1.0 + std::abs(rep.continuum)))
            rep.lower_bounded = false;
    }

    // Fit gap ~ C / N^order through the positive gaps.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& row : rep.rows) {
        if (!(row.gap > 0.0)) continue;
        double x = std::log(static_cast<double>(row.N));
        double y = std::log(row.gap);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2)
        rep.order = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
    else
        rep.order = std::numeric_limits<double>::quiet_NaN();
    return rep;
}

double legendre_conjugate(const std::function<double(double)>& lambda, double x) {
    auto g = [&](double l) {
        double f = lambda(l);
        if (std::isnan(f)) throw std::domain_error("legendre_conjugate: lambda not finite");
        return l * x - f;  // +inf lambda values drop out as -inf
    };

    const int half = 256;
    for (double L = 1.0 + std::abs(x); L < 1e18; L *= 2.0) {
        int best = -1;
        double best_val = -std::numeric_limits<double>::infinity();
        for (int i = -half; i <= half; ++i) {
            double v = g(L * i / half);
            if (v > best_val) {
                best_val = v;
                best = i;
            }
        }
        if (best == -1 || best == -half || best == half) continue;  // expand bracket
        double lo = L * (best - 1) / half;
        double hi = L * (best + 1) / half;
        for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::abs(lo) + std::abs(hi));
             ++it) {
            double m1 = lo + (hi - lo) / 3.0;
            double m2 = hi - (hi - lo) / 3.0;
            if (g(m1) < g(m2))
                lo = m1;
            else
                hi = m2;
        }
        double v = g(0.5 * (lo + hi));
        if (!std::isfinite(v)) throw std::domain_error("legendre_conjugate: value not finite");
        return v;
    }
    throw std::domain_error("legendre_conjugate: maximiser escapes every bracket");
}

double mogulskii_rate(const macro_profile& h) {
    // Gaussian conjugate x^2/2 collapses to the rescaled energy.
    return rescaled_energy(h);
}

double mogulskii_rate(const macro_profile& h, const std::function<double(double)>& lambda) {
    int N = h.N;
    if (static_cast<int>(h.v.size()) != N + 3)
        throw std::domain_error("mogulskii_rate: profile missing extension slots");
    double n2 = static_cast<double>(N) * N;
    double acc = 0.0;
    for (int j = 0; j <= N; ++j) {
        double d2 = h.at(j + 1) + h.at(j - 1) - 2.0 * h.at(j);
        acc += legendre_conjugate(lambda, n2 * d2);
    }
    double out = acc / N;
    if (!std::isfinite(out)) throw std::domain_error("mogulskii_rate: rate not finite");
    return out;
}

namespace {

double quantile(std::vector<double>& x, double q) {
    if (x.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(x.begin(), x.end());
    size_t idx = static_cast<size_t>(q * (x.size() - 1) + 0.5);
    if (idx >= x.size()) idx = x.size() - 1;
    return x[idx];
}

}  // namespace

concentration_result concentration_experiment(const sampler_config& base,
                                              const phase_report& report,
                                              const std::vector<int>& N_list,
                                              const std::vector<double>& delta_grid,
                                              int replicas) {
    if (report.minimisers.empty())
        throw std::domain_error("concentration_experiment: empty minimiser set");
    if (replicas < 1) throw std::domain_error("concentration_experiment: need replicas >= 1");

    concentration_result res;
    res.delta_grid = delta_grid;

    for (int N : N_list) {
        sampler_config cfg = base;
        cfg.N = N;
        std::vector<double> dists;
        double contact_acc = 0.0;
        long contact_n = 0;
        for (int r = 0; r < replicas; ++r) {
            cfg.stream = base.stream + static_cast<std::uint64_t>(r);
            run_chain(cfg, [&](const chain_record& rec) {
                double best = std::numeric_limits<double>::infinity();
                for (const auto& d : report.minimisers) {
                    double dist =
                        sup_distance(rec.profile, [&](double t) { return d.shape.value(t); });
                    best = std::min(best, dist);
                }
                dists.push_back(best);
                contact_acc += rec.contact_fraction;
                contact_n += 1;
            });
        }
        concentration_row row;
        row.N = N;
        {
            std::vector<double> tmp = dists;
            row.median_dist = quantile(tmp, 0.5);
        }
        {
            std::vector<double> tmp = dists;
            row.q90_dist = quantile(tmp, 0.9);
        }
        row.mean_contact = contact_n > 0 ? contact_acc / contact_n : 0.0;
        for (double delta : delta_grid) {
            long c = 0;
            for (double d : dists) c += (d <= delta);
            row.coverage.push_back(dists.empty() ? 0.0
                                                 : static_cast<double>(c) / dists.size());
        }
        res.rows.push_back(std::move(row));
    }
    return res;
}

}  // namespace pinlab
