#pragma once
// Registry of figure-reproduction experiments plus the acceptance suite.
#include <iosfwd>
#include <string>
#include <vector>

#include "coopcell/config.hpp"
#include "coopcell/table.hpp"

namespace coopcell {

struct ExperimentInfo {
    std::string id, description;
};

// Stable-sorted by id.
const std::vector<ExperimentInfo>& experiment_registry();

// Throws std::invalid_argument listing the registered ids on an unknown id.
Table run_experiment(const std::string& id, const RunConfig& cfg, int workers = 1,
                     std::ostream* log = nullptr);

// Policy-averaged relative rate gain over the cell-edge half ring
// (r1 in [rc/2, rc], Rayleigh-weighted) at idle ratio lambda2/lambda1 = ratio.
// Noise power is pinned from `base`; rho1 is re-derived for the ratio.
double half_ring_gain(const RunConfig& base, double ratio, double rc, long n_draws,
                      std::uint64_t seed);

} // namespace coopcell
