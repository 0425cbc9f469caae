#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "pinlab/free_energy.hpp"

using namespace pinlab;

TEST_CASE("the two-site ratio has a one-line closed form") {
    // One free site with curvature 6: the plain mass is sqrt(2 pi / 6) and
    // the single pinned subset contributes the empty integral, mass 1.
    for (double eps : {0.0, 0.5, 3.0, 100.0}) {
        double expect = std::log1p(eps * std::sqrt(3.0 / std::numbers::pi));
        CHECK(ratio_exact(2, eps) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("without reward the ratio vanishes identically") {
    for (int N = 2; N <= 9; ++N) CHECK(ratio_exact(N, 0.0) == 0.0);
}

TEST_CASE("the ratio grows with the reward") {
    for (int N : {3, 6, 10}) {
        double prev = ratio_exact(N, 0.0);
        for (double eps : {0.1, 1.0, 10.0, 1000.0}) {
            double cur = ratio_exact(N, eps);
            CHECK(cur > prev);
            prev = cur;
        }
    }
}

TEST_CASE("subset weights start at the empty set and factor across double pins") {
    std::vector<double> w = pin_set_log_weights(4, 2.0);
    REQUIRE(w.size() == 8);
    CHECK(w[0] == 0.0);

    // sites {1,2} split the chain: the left block is fully fixed and the
    // right block is a plain two-site chain, so the weight is
    // 2 log(eps) + log Z_2(empty) - log Z_4(empty)
    double lz2 = log_partition_zero(2, pin_set{});
    double lz4 = log_partition_zero(4, pin_set{});
    CHECK(w[0b011] == doctest::Approx(2.0 * std::log(2.0) + lz2 - lz4).epsilon(1e-12));

    // single pin at site 1 of a 3-chain leaves one free site of curvature 6,
    // same mass as the plain 2-chain
    std::vector<double> w3 = pin_set_log_weights(3, 1.0);
    REQUIRE(w3.size() == 4);
    CHECK(w3[0b01] == doctest::Approx(lz2 - log_partition_zero(3, pin_set{})).epsilon(1e-12));
}

TEST_CASE("the density is the logarithmic derivative of the ratio") {
    const int N = 6;
    for (double eps : {0.3, 2.0, 20.0}) {
        double d = 1e-5 * eps;
        double fd = eps * (ratio_exact(N, eps + d) - ratio_exact(N, eps - d)) / (2.0 * d) / N;
        CHECK(pin_density_exact(N, eps) == doctest::Approx(fd).epsilon(1e-6));
    }
    CHECK(pin_density_exact(6, 0.0) == 0.0);
}

TEST_CASE("enumeration is refused beyond the guard size") {
    CHECK_THROWS_AS(ratio_exact(23, 1.0), std::length_error);
    CHECK_THROWS_AS(pin_set_log_weights(23, 1.0), std::length_error);
    CHECK_THROWS_AS(pin_set_log_weights(1, 1.0), std::domain_error);
    CHECK_THROWS_AS(pin_set_log_weights(4, -1.0), std::domain_error);
}

TEST_CASE("thermodynamic integration reproduces the enumerated ratio") {
    const int N = 6;
    const double eps = 2.0;
    ti_budget budget;
    budget.nodes_per_decade = 24;
    budget.sweeps = 1500;
    budget.burn_in = 300;
    budget.replicas = 6;
    budget.seed = 99;

    tau_estimate_result r = tau_estimate(eps, {N}, budget);
    double exact = ratio_exact(N, eps) / N;
    REQUIRE(r.exact_per_N.size() == 1);
    CHECK(r.exact_per_N[0] == doctest::Approx(exact).epsilon(1e-12));
    CHECK(r.err > 0.0);
    CHECK(std::abs(r.tau_hat - exact) <= 3.0 * r.err + 0.01);
    CHECK(!r.nodes.empty());
    CHECK(r.nodes.back().eps == eps);
    // pin densities are fractions
    for (const auto& node : r.nodes) {
        CHECK(node.density >= 0.0);
        CHECK(node.density <= 1.0);
    }
}

TEST_CASE("estimates carry exact references only where enumeration reaches") {
    ti_budget tiny;
    tiny.nodes_per_decade = 4;
    tiny.sweeps = 60;
    tiny.burn_in = 20;
    tiny.replicas = 2;
    tau_estimate_result r = tau_estimate(1.0, {6, 30}, tiny);
    REQUIRE(r.N_list == std::vector<int>{6, 30});
    CHECK(std::isfinite(r.exact_per_N[0]));
    CHECK(std::isnan(r.exact_per_N[1]));
    CHECK(r.tau_hat == r.tau_per_N[1]);  // reported at the largest size
    CHECK(std::isfinite(r.extrapolated));

    CHECK_THROWS_AS(tau_estimate(0.0, {6}, tiny), std::domain_error);
    CHECK_THROWS_AS(tau_estimate(1.0, {}, tiny), std::domain_error);
}

TEST_CASE("the density scan mixes exact and sampled rows") {
    ti_budget tiny;
    tiny.sweeps = 80;
    tiny.burn_in = 20;
    tiny.replicas = 2;
    std::vector<density_row> rows = critical_region_scan({0.0, 0.5}, {8, 20}, tiny);
    REQUIRE(rows.size() == 4);

    CHECK(rows[0].N == 8);
    CHECK(rows[0].exact);
    CHECK(rows[0].density == 0.0);
    CHECK(rows[1].exact);
    CHECK(rows[1].density == doctest::Approx(pin_density_exact(8, 0.5)).epsilon(1e-12));

    CHECK(rows[2].N == 20);
    CHECK(rows[2].exact);  // zero reward is exact at any size
    CHECK(rows[2].density == 0.0);
    CHECK(!rows[3].exact);
    CHECK(rows[3].density >= 0.0);
    CHECK(rows[3].density <= 1.0);
    CHECK(rows[3].spread >= 0.0);
}
