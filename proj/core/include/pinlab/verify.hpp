#pragma once

#include <string>
#include <vector>

namespace pinlab::verify {

struct check_result {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct options {
    bool quick = false;  // reduced Monte Carlo budgets for smoke runs
};

// Exact-algebra checks: determinant closed form, variance bound,
// correction inequality, double-pin factorization.
std::vector<check_result> suite_core(const options& opt = {});

// Closed-form reference lengths, cubic energies, zero-count law and the
// brute-force phase classification cross-check.
std::vector<check_result> suite_variational(const options& opt = {});

// Heat-bath exactness against enumeration and the bridge-map moments.
std::vector<check_result> suite_sampler(const options& opt = {});

// Thermodynamic-integration cross-checks and the large-reward asymptote.
std::vector<check_result> suite_free_energy(const options& opt = {});

// Concentration of sampled profiles and discrete-to-continuum energy
// convergence.
std::vector<check_result> suite_ldp(const options& opt = {});

std::vector<std::string> suite_names();
std::vector<check_result> run_suite(const std::string& name, const options& opt = {});

}  // namespace pinlab::verify
