#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pinlab/chain.hpp"
#include "pinlab/profile.hpp"
#include "pinlab/rng.hpp"

namespace pinlab {

// Configuration of a single pinned-Gibbs chain.
struct sampler_config {
    int N = 2;
    boundary_data bc;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;  // replica index, selects the RNG stream
    long sweeps = 0;           // total sweeps including burn-in
    long burn_in = 0;
    long thin = 1;
    bool random_scan = false;  // default: deterministic forward-backward order
};

// Field plus an explicit pin selection. A pinned site holds the exact
// value 0: the atom of the single-site measure is a discrete choice, not
// a float coincidence.
struct chain_state {
    lattice_field field;
    bool free_right = false;
    std::vector<std::uint8_t> pin_flag;  // size N+3, aligned with field.v

    chain_state(int N, bool free_right_);

    bool is_pinned(int k) const { return pin_flag[static_cast<size_t>(k + 1)] != 0; }
    int pin_count() const;
    pin_set pins() const;  // collects the flagged sites
};

// Integrated random walk: increments X are standard normals, the slope
// process starts at alpha*N and the height process at a*N^2. No
// conditioning at the right end.
lattice_field sample_integrated_rw(int N, double a, double alpha, rng& g);

// Subtracts the cubic interpolant pinned down by the endpoint pair, so the
// output vanishes at N and N+1 exactly; with zero left data the output law
// is the conditioned bridge.
lattice_field bridge_map(const lattice_field& f);

// Exact draw: constrained minimiser plus a zero-mean fluctuation with the
// pinned precision.
lattice_field sample_pinned_gaussian(int N, const boundary_data& bc, const pin_set& pins,
                                     rng& g);

// One heat-bath update of site k: re-decides pin vs Gaussian draw from the
// closed-form conditional mixture given the rest of the field.
void gibbs_update_site(chain_state& s, int k, double epsilon, rng& g);

// Full deterministic sweep: sites 1..K forward then K..1 backward, where
// K = N-1 (clamped right end) or N+1 (free right end).
void gibbs_sweep(chain_state& s, double epsilon, rng& g);

// 2K single-site updates at uniformly random sites (same work as a sweep).
void gibbs_sweep_random(chain_state& s, double epsilon, rng& g);

// Count of exact zeros among sites 1..N.
int contact_number(const lattice_field& f);

struct chain_record {
    long sweep = 0;
    const chain_state& state;
    double contact_fraction = 0.0;  // contact_number / N
    macro_profile profile;
};

struct chain_summary {
    long emitted = 0;
    double mean_contact_fraction = 0.0;
    double mean_pin_fraction = 0.0;  // pins per site count N
};

// Start from the unpinned constrained minimiser.
chain_state initial_state(const sampler_config& cfg);

// Runs the chain and hands every thin-th post-burn-in state to the
// callback. Deterministic for a fixed config.
chain_summary run_chain(const sampler_config& cfg,
                        const std::function<void(const chain_record&)>& on_sample,
                        const chain_state* init = nullptr);

}  // namespace pinlab
