#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pinlab/rng.hpp"
#include "pinlab/variational.hpp"

using namespace pinlab;

namespace {

double deriv(double l, double a, double alpha, double tau) {
    double d = 1e-5 * l;
    return (segment_energy_tau(l + d, a, alpha, tau) - segment_energy_tau(l - d, a, alpha, tau)) /
           (2.0 * d);
}

}  // namespace

TEST_CASE("the interior cubic interpolates clamped data at both ends") {
    boundary_data bc = boundary_data::clamped(0.4, -1.1, 0.9, 2.3);
    cubic_minimiser m = biharmonic_minimiser(bc);
    cubic_segment s = m.segment();
    CHECK(s.value(0.0) == 0.4);
    CHECK(s.slope(0.0) == -1.1);
    CHECK(s.value(1.0) == doctest::Approx(0.9).epsilon(1e-13));
    CHECK(s.slope(1.0) == doctest::Approx(2.3).epsilon(1e-13));
    CHECK(m.energy() == doctest::Approx(s.bend_energy()).epsilon(1e-13));
    CHECK_THROWS_AS(biharmonic_minimiser(boundary_data::free_right(1.0, 0.0)), std::domain_error);
}

TEST_CASE("segment energy with reward matches the touching cubic plus linear term") {
    pinlab::rng g(41);
    for (int trial = 0; trial < 25; ++trial) {
        double a = 4.0 * g.uniform() - 2.0;
        double alpha = 4.0 * g.uniform() - 2.0;
        double l = 0.05 + 0.9 * g.uniform();
        double tau = 100.0 * g.uniform();
        CHECK(segment_energy_tau(l, a, alpha, tau) ==
              doctest::Approx(touch_left_segment(a, alpha, l).bend_energy() + tau * l).epsilon(1e-10));
    }
    CHECK_THROWS_AS(segment_energy_tau(0.0, 1.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(segment_energy_tau(0.5, 1.0, 1.0, -1.0), std::domain_error);
}

TEST_CASE("critical lengths are stationary local minima of the segment energy") {
    pinlab::rng g(42);
    int done = 0;
    while (done < 200) {
        double a = 4.0 * g.uniform() - 2.0;
        double alpha = 4.0 * g.uniform() - 2.0;
        double tau = 0.1 + 400.0 * g.uniform();
        if (std::abs(a) < 1e-2 || std::abs(alpha) < 1e-2) continue;
        // skip draws close to the crossing-branch cap where the second
        // length degenerates into a stationary inflection
        if (a * alpha < 0.0) {
            double disc = alpha * alpha - 6.0 * std::abs(a) * std::sqrt(2.0 * tau);
            if (std::abs(disc) < 1e-3 * alpha * alpha) continue;
        }
        ++done;
        for (const auto& cl : critical_lengths(tau, a, alpha)) {
            double scale = std::abs(segment_energy_tau(cl.l, a, alpha, tau)) / cl.l + tau + 1.0;
            CHECK(std::abs(deriv(cl.l, a, alpha, tau)) <= 1e-6 * scale);
            // positive curvature: the central second difference is positive
            double d = 1e-4 * cl.l;
            double second = segment_energy_tau(cl.l + d, a, alpha, tau) +
                            segment_energy_tau(cl.l - d, a, alpha, tau) -
                            2.0 * segment_energy_tau(cl.l, a, alpha, tau);
            CHECK(second > 0.0);
            CHECK(cl.feasible == (cl.l <= 1.0));
        }
    }
}

TEST_CASE("critical lengths take their closed forms in each sign case") {
    // opposite signs at the cap: both lengths exact in floating point
    auto both = critical_lengths(288.0, 1.0, -12.0);
    REQUIRE(both.size() == 2);
    CHECK(both[0].kind == length_kind::first);
    CHECK(both[1].kind == length_kind::second);
    CHECK(both[0].l == doctest::Approx(0.5 * (std::sqrt(2.0) - 1.0)).epsilon(1e-13));
    CHECK(both[1].l == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(both[0].feasible);
    CHECK(both[1].feasible);

    // vanishing height
    auto flat = critical_lengths(8.0, 0.0, 1.0);
    REQUIRE(flat.size() == 1);
    CHECK(flat[0].l == doctest::Approx(0.5).epsilon(1e-13));

    // vanishing slope
    auto level = critical_lengths(18.0, 2.0, 0.0);
    REQUIRE(level.size() == 1);
    CHECK(level[0].l == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    CHECK(!level[0].feasible);

    // aligned signs never cross
    auto aligned = critical_lengths(2.0, 1.0, 3.0);
    REQUIRE(aligned.size() == 1);
    CHECK(aligned[0].l == doctest::Approx(0.5 * (3.0 + std::sqrt(21.0))).epsilon(1e-13));
    CHECK(!aligned[0].feasible);

    // above the cap the crossing length disappears
    CHECK(critical_lengths(300.0, 1.0, -12.0).size() == 1);
    CHECK(critical_lengths(5.0, 0.0, 0.0).empty());

    CHECK_THROWS_AS(critical_lengths(0.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(critical_lengths(-2.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("zero counting matches sign changes of the touching cubic") {
    pinlab::rng g(43);
    int done = 0;
    const int M = 20000;
    while (done < 300) {
        double a = 4.0 * g.uniform() - 2.0;
        double alpha = 4.0 * g.uniform() - 2.0;
        double l = 0.05 + 0.95 * g.uniform();
        if (std::abs(a) < 1e-3) continue;
        double ratio = std::abs(alpha) * l / std::abs(a);
        if (std::abs(ratio - 3.0) < 1e-3) continue;
        ++done;

        cubic_segment s = touch_left_segment(a, alpha, l);
        int changes = 0;
        double prev = 0.0;
        bool have_prev = false;
        for (int j = 1; j <= M; ++j) {
            double v = s.value(l * j / (M + 1));
            if (v == 0.0) continue;
            if (have_prev && (v > 0.0) != (prev > 0.0)) ++changes;
            prev = v;
            have_prev = true;
        }
        CHECK(zero_count(a, alpha, l) == changes);
    }

    CHECK(zero_count(1.0, -3.0, 1.0) == 0);     // threshold itself does not cross
    CHECK(zero_count(1.0, -3.01, 1.0) == 1);
    CHECK(zero_count(1.0, -2.99, 1.0) == 0);
    CHECK(zero_count(0.0, 5.0, 0.7) == 0);
    CHECK(zero_count(1.0, 2.0, 0.7) == 0);
    CHECK_THROWS_AS(zero_count(1.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("the branch energy gap decreases in tau and crosses zero once") {
    const double a = 1.0, alpha = -12.0;
    const double tmax = crossing_branch_tau_max(a, alpha);
    CHECK(tmax == doctest::Approx(288.0).epsilon(1e-14));

    double prev = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= 9; ++j) {
        double d = delta_tau(0.1 * j * tmax, a, alpha);
        CHECK(d < prev);
        prev = d;
    }

    double t0 = tau0(a, alpha);
    CHECK(t0 > 0.0);
    CHECK(t0 < tmax);
    CHECK(delta_tau(t0 * (1.0 - 1e-6), a, alpha) > 0.0);
    CHECK(delta_tau(t0 * (1.0 + 1e-6), a, alpha) < 0.0);

    CHECK_THROWS_AS(delta_tau(289.0, 1.0, -12.0), std::domain_error);
    CHECK_THROWS_AS(delta_tau(10.0, 1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(tau0(1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(crossing_branch_tau_max(0.0, 1.0), std::domain_error);
}

TEST_CASE("the branch root is covariant under data scalings") {
    // amplitude scaling multiplies energies, hence the root, by mu^2;
    // length scaling (a, alpha) -> (s^2 a, s alpha) leaves it alone
    double base = tau0(1.0, -12.0);
    CHECK(tau0(2.0, -24.0) == doctest::Approx(4.0 * base).epsilon(1e-8));
    CHECK(tau0(4.0, -24.0) == doctest::Approx(base).epsilon(1e-8));
    CHECK(tau0(-1.0, 12.0) == doctest::Approx(base).epsilon(1e-8));
}

TEST_CASE("detachment thresholds take their closed values") {
    CHECK(tau_star(0.0, 1.0, 1) == doctest::Approx(8.0).epsilon(1e-9));
    CHECK(tau_star(0.0, -2.5, 1) == doctest::Approx(8.0 * 2.5 * 2.5).epsilon(1e-9));

    double c = 6.0 / std::pow(18.0, 0.75) + std::pow(18.0, 0.25);
    double ref = c * c * c * c;
    CHECK(tau_star(1.0, 0.0, 1) == doctest::Approx(ref).epsilon(1e-9));
    CHECK(tau_star(2.0, 0.0, 1) == doctest::Approx(4.0 * ref).epsilon(1e-9));
    CHECK(tau_star(-1.0, 0.0, 1) == doctest::Approx(ref).epsilon(1e-9));

    // the rate at the root vanishes
    for (auto [a, alpha] : {std::pair{1.0, -12.0}, {0.3, 0.7}, {-0.5, -0.1}}) {
        double ts = tau_star(a, alpha, 1);
        auto ls = critical_lengths(ts, a, alpha);
        REQUIRE(!ls.empty());
        CHECK(segment_energy_tau(ls[0].l, a, alpha, ts) - ts ==
              doctest::Approx(0.0).epsilon(1e-8).scale(ts));
    }
}

TEST_CASE("the crossing-branch threshold exists only below its cap") {
    CHECK(std::isinf(tau_star(1.0, -12.0, 2)));  // rate still positive at the cap
    CHECK(std::isinf(tau_star(1.0, 2.0, 2)));    // aligned signs never cross
    CHECK(std::isinf(tau_star(0.0, 1.0, 2)));

    double t2 = tau_star(0.1, -6.0, 2);
    double tmax = crossing_branch_tau_max(0.1, -6.0);
    CHECK(tmax == doctest::Approx(1800.0).epsilon(1e-12));
    REQUIRE(std::isfinite(t2));
    CHECK(t2 > 0.0);
    CHECK(t2 < tmax);
    auto ls = critical_lengths(t2, 0.1, -6.0);
    REQUIRE(ls.size() == 2);
    CHECK(segment_energy_tau(ls[1].l, 0.1, -6.0, t2) - t2 ==
          doctest::Approx(0.0).epsilon(1e-8).scale(t2));

    CHECK_THROWS_AS(tau_star(1.0, 0.0, 3), std::domain_error);
    CHECK_THROWS_AS(tau_star(0.0, 0.0, 1), std::domain_error);
}

TEST_CASE("descriptor factories validate their inputs") {
    CHECK_THROWS_AS(make_touch_left(1.0, 0.0, 1.5), std::domain_error);
    CHECK_THROWS_AS(make_touch_left(1.0, 0.0, 0.0), std::domain_error);

    boundary_data bc = boundary_data::clamped(1.0, 0.0, 1.0, 0.0);
    CHECK_THROWS_AS(make_touch_both(bc, 0.6, 0.6), std::domain_error);
    CHECK_THROWS_AS(make_touch_both(bc, 0.0, 0.3), std::domain_error);  // nonzero left data

    boundary_data half = boundary_data::clamped(0.0, 0.0, 1.0, 2.0);
    minimiser_descriptor d = make_touch_both(half, 0.0, 0.3);
    CHECK(d.zero_measure == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(d.shape.pieces.size() == 1);

    minimiser_descriptor z = make_linear(0.0, 0.0);
    CHECK(z.kind == profile_kind::zero);
    CHECK(z.zero_measure == 1.0);
    CHECK(sigma_value(z, 5.0) == -5.0);

    minimiser_descriptor lin = make_linear(0.5, -1.0);
    CHECK(lin.energy == 0.0);
    CHECK(lin.zero_measure == 0.0);
    CHECK(lin.shape.value(0.4) == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("free-end classification at reference points") {
    // strong reward on vanishing height: attachment wins with exact numbers
    phase_report on = classify_free(0.0, 1.0, 32.0);
    CHECK(on.regime == "attached-direct");
    CHECK(on.sigma_min == -16.0);
    REQUIRE(on.minimisers.size() == 1);
    CHECK(on.minimisers[0].kind == profile_kind::touch_left);
    CHECK(*on.minimisers[0].l == 0.25);
    CHECK(!on.degenerate);

    // weak reward: staying linear is free
    phase_report off = classify_free(0.0, 1.0, 5.0);
    CHECK(off.regime == "detached");
    CHECK(off.sigma_min == 0.0);

    // at the threshold both profiles tie exactly
    phase_report tie = classify_free(0.0, 1.0, 8.0);
    CHECK(tie.degenerate);
    CHECK(tie.regime == "boundary:attached-direct+detached");
    CHECK(tie.minimisers.size() == 2);

    // steep data at the crossing cap: attachment too expensive, both lengths recorded
    phase_report steep = classify_free(1.0, -12.0, 288.0);
    CHECK(steep.regime == "detached");
    CHECK(steep.sigma_min == 0.0);
    REQUIRE(steep.lengths.size() == 2);
    CHECK(steep.note.empty());
    CHECK(classify_free(1.0, -12.0, 300.0).note == "crossing-branch-absent-at-tau");

    phase_report flat = classify_free(0.0, 0.0, 3.0);
    CHECK(flat.regime == "zero-boundary");
    CHECK(flat.sigma_min == -3.0);

    CHECK_THROWS_AS(classify_free(1.0, 0.0, -1.0), std::domain_error);
}

TEST_CASE("symmetric clamped classification at reference points") {
    phase_report interior = classify_dirichlet_symmetric(1.0, -12.0, 288.0);
    CHECK(interior.regime == "interior");
    CHECK(interior.sigma_min == 288.0);
    REQUIRE(interior.minimisers.size() == 1);
    CHECK(interior.minimisers[0].kind == profile_kind::biharmonic);
    CHECK(interior.note == "two-branch-window");

    phase_report pair = classify_dirichlet_symmetric(0.05, -1.0, 50.0);
    CHECK(pair.regime == "attached-direct-pair");
    CHECK(pair.sigma_min == doctest::Approx(-30.0).epsilon(1e-9));
    REQUIRE(pair.minimisers.size() == 1);
    CHECK(*pair.minimisers[0].l == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(*pair.minimisers[0].r == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(pair.note.empty());

    CHECK(classify_dirichlet_symmetric(0.0, 0.0, 2.0).regime == "zero-boundary");
}

TEST_CASE("numeric clamped classification agrees with a two-length grid search") {
    boundary_data bc = boundary_data::clamped(0.05, -1.0, 0.08, 2.0);
    const double tau = 50.0;
    phase_report rep = classify_dirichlet_numeric(bc, tau);
    CHECK(rep.regime == "numeric");

    auto bendl = [&](double l) {
        return touch_left_segment(bc.a, bc.alpha, l).bend_energy();
    };
    auto bendr = [&](double r) {
        return touch_right_segment(*bc.b, *bc.beta, r).bend_energy();
    };
    auto sig = [&](double l, double r) { return bendl(l) + bendr(r) - tau * (1.0 - l - r); };

    const int G = 600;
    double best = sigma_value(make_biharmonic(bc), tau);
    double bl = -1.0, br = -1.0;
    for (int i = 1; i <= G; ++i) {
        for (int j = 1; j <= G - i; ++j) {
            double s = sig(static_cast<double>(i) / G, static_cast<double>(j) / G);
            if (s < best) {
                best = s;
                bl = static_cast<double>(i) / G;
                br = static_cast<double>(j) / G;
            }
        }
    }
    if (bl > 0.0) {
        // coordinate ternary refinement around the winning cell
        for (int round = 0; round < 4; ++round) {
            double lo = std::max(1.0 / G, bl - 2.0 / G), hi = std::min(1.0 - br, bl + 2.0 / G);
            for (int it = 0; it < 100; ++it) {
                double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
                if (sig(m1, br) < sig(m2, br)) hi = m2; else lo = m1;
            }
            bl = 0.5 * (lo + hi);
            lo = std::max(1.0 / G, br - 2.0 / G);
            hi = std::min(1.0 - bl, br + 2.0 / G);
            for (int it = 0; it < 100; ++it) {
                double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
                if (sig(bl, m1) < sig(bl, m2)) hi = m2; else lo = m1;
            }
            br = 0.5 * (lo + hi);
        }
        best = sig(bl, br);
    }
    CHECK(rep.sigma_min == doctest::Approx(best).epsilon(1e-6));

    // without reward only the interior cubic competes
    phase_report plain = classify_dirichlet_numeric(bc, 0.0);
    REQUIRE(plain.minimisers.size() == 1);
    CHECK(plain.minimisers[0].kind == profile_kind::biharmonic);
    CHECK(plain.sigma_min == doctest::Approx(sigma_value(make_biharmonic(bc), 0.0)).epsilon(1e-12));

    CHECK_THROWS_AS(classify_dirichlet_numeric(boundary_data::free_right(1.0, 0.0), 1.0),
                    std::domain_error);
}

TEST_CASE("profile tables sample the winning shape") {
    minimiser_descriptor lin = make_linear(1.0, 2.0);
    std::vector<double> v = build_profile(lin, 4);
    REQUIRE(v.size() == 5);
    for (int j = 0; j <= 4; ++j) CHECK(v[static_cast<std::size_t>(j)] == doctest::Approx(1.0 + 0.5 * j).epsilon(1e-14));
    CHECK_THROWS_AS(build_profile(lin, 1), std::domain_error);
}
