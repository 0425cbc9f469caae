#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pinlab/ldp.hpp"
#include "pinlab/rng.hpp"

using namespace pinlab;

TEST_CASE("the rescaled energy of an empirical profile recovers the field energy") {
    pinlab::rng g(71);
    for (int N : {4, 9, 32}) {
        lattice_field f(N);
        for (int k = -1; k <= N + 1; ++k) f.at(k) = 5.0 * g.normal();
        macro_profile h = empirical_profile(f);
        CHECK(N * rescaled_energy(h) == doctest::Approx(hamiltonian(f)).epsilon(1e-9));
    }

    macro_profile broken(4);
    broken.v.resize(5);
    CHECK_THROWS_AS(rescaled_energy(broken), std::domain_error);
}

TEST_CASE("rate evaluations combine energy, zero measure and reward") {
    pinlab::rng g(72);
    lattice_field f(10);
    for (int k = -1; k <= 11; ++k) f.at(k) = g.normal();
    macro_profile h = empirical_profile(f);

    rate_evaluation r = evaluate_rate(h, 3, 7.0);
    CHECK(r.energy == rescaled_energy(h));
    CHECK(r.zero_measure == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(r.tau_used == 7.0);
    CHECK(r.sigma == doctest::Approx(r.energy - 7.0 * 0.3).epsilon(1e-13));

    minimiser_descriptor d = make_touch_left(1.0, -4.0, 0.5);
    rate_evaluation s = evaluate_rate(d, 10.0);
    CHECK(s.energy == d.energy);
    CHECK(s.sigma == doctest::Approx(d.energy - 10.0 * 0.5).epsilon(1e-13));
}

TEST_CASE("legendre conjugates of reference convex functions") {
    auto gauss = [](double l) { return 0.5 * l * l; };
    auto quartic = [](double l) { return 0.25 * l * l * l * l; };
    for (double x : {-3.0, -0.7, 0.0, 1.2, 8.0}) {
        CHECK(legendre_conjugate(gauss, x) ==
              doctest::Approx(0.5 * x * x).epsilon(1e-6).scale(1.0));
        double ref = 0.75 * std::pow(std::abs(x), 4.0 / 3.0);
        CHECK(legendre_conjugate(quartic, x) == doctest::Approx(ref).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("the composite rate with the Gaussian conjugate is the rescaled energy") {
    pinlab::rng g(73);
    lattice_field f(12);
    for (int k = -1; k <= 13; ++k) f.at(k) = 0.3 * g.normal();
    macro_profile h = empirical_profile(f);

    CHECK(mogulskii_rate(h) == rescaled_energy(h));
    auto gauss = [](double l) { return 0.5 * l * l; };
    CHECK(mogulskii_rate(h, gauss) == doctest::Approx(rescaled_energy(h)).epsilon(1e-6));
}

TEST_CASE("discrete energies of cubics exceed the continuum by the exact gap") {
    pinlab::rng g(74);
    std::vector<int> ladder = {8, 16, 32, 64, 128, 256, 512};
    for (int trial = 0; trial < 8; ++trial) {
        double c0 = 4.0 * g.uniform() - 2.0;
        double c1 = 4.0 * g.uniform() - 2.0;
        double c2 = 0.0;
        do {
            c2 = 6.0 * g.uniform() - 3.0;
        } while (std::abs(c2) < 0.2);
        double c3 = 6.0 * g.uniform() - 3.0;

        auto h = [=](double t) { return c0 + t * (c1 + t * (c2 + t * c3)); };
        auto hpp = [=](double t) { return 2.0 * c2 + 6.0 * c3 * t; };
        gamma_report rep = gamma_convergence_check(h, hpp, ladder);

        double e0 = hpp(0.0) * hpp(0.0), e1 = hpp(1.0) * hpp(1.0);
        for (const auto& row : rep.rows) {
            double n = static_cast<double>(row.N);
            double predicted = (e0 + e1) / (4.0 * n) + 3.0 * c3 * c3 / (n * n);
            CHECK(row.gap == doctest::Approx(predicted).epsilon(1e-7).scale(1.0 + rep.continuum));
        }
        CHECK(rep.lower_bounded);
        CHECK(rep.order > 0.9);
        CHECK(rep.order < 1.1);
    }
}

TEST_CASE("the parabola's gap is exactly two over N") {
    auto h = [](double t) { return t * t; };
    auto hpp = [](double) { return 2.0; };
    gamma_report rep = gamma_convergence_check(h, hpp, {8, 32, 128});
    CHECK(rep.continuum == doctest::Approx(2.0).epsilon(1e-12));
    for (const auto& row : rep.rows)
        CHECK(row.gap == doctest::Approx(2.0 / row.N).epsilon(1e-10));
    CHECK(rep.order == doctest::Approx(1.0).epsilon(2e-2));
}

TEST_CASE("affine profiles carry no discrete energy") {
    auto h = [](double t) { return 1.0 + 0.5 * t; };
    auto hpp = [](double) { return 0.0; };
    gamma_report rep = gamma_convergence_check(h, hpp, {8, 64});
    for (const auto& row : rep.rows) CHECK(std::abs(row.discrete) <= 1e-20);
    CHECK(rep.lower_bounded);
}

TEST_CASE("sampled chains stay near the classified shape") {
    sampler_config base;
    base.bc = boundary_data::clamped(0.0, 0.0, 0.0, 0.0);
    base.epsilon = 10.0;
    base.seed = 77;
    base.sweeps = 200;
    base.burn_in = 80;
    base.thin = 4;

    phase_report rep = classify_dirichlet_numeric(base.bc, 0.0);
    REQUIRE(!rep.minimisers.empty());

    std::vector<double> deltas = {0.05, 0.1, 0.5};
    concentration_result res = concentration_experiment(base, rep, {16, 32}, deltas, 2);
    REQUIRE(res.rows.size() == 2);
    CHECK(res.delta_grid == deltas);
    for (const auto& row : res.rows) {
        CHECK(row.median_dist >= 0.0);
        CHECK(row.q90_dist >= row.median_dist);
        CHECK(row.mean_contact >= 0.0);
        CHECK(row.mean_contact <= 1.0);
        REQUIRE(row.coverage.size() == deltas.size());
        for (std::size_t i = 0; i < row.coverage.size(); ++i) {
            CHECK(row.coverage[i] >= 0.0);
            CHECK(row.coverage[i] <= 1.0);
            if (i > 0) CHECK(row.coverage[i] >= row.coverage[i - 1]);
        }
    }

    phase_report empty;
    CHECK_THROWS_AS(concentration_experiment(base, empty, {16}, deltas, 2), std::domain_error);
    CHECK_THROWS_AS(concentration_experiment(base, rep, {16}, deltas, 0), std::domain_error);
}
