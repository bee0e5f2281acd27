#pragma once
// Flat key-value run configuration with loud validation.
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "coopcell/interference.hpp"

namespace coopcell {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NetworkConfig {
    double lambda1 = 1.0 / 360000.0; // users/m^2
    double lambda2 = 2.0 / 360000.0;
    double alpha = 4.0;
    double cell_radius = 300.0; // m
    double noise_power = 0.0;   // W
    double p_s = 0.0, p_r = 0.0;
    double alpha1 = 0.5, alpha2 = 0.5;
    double rho1 = 0.0; // interferer thinning probability

    FieldConfig field() const { return {lambda1, alpha, cell_radius}; }
    void validate() const;
};

struct RunConfig {
    NetworkConfig net;
    double p_max_dbm = 23.0;
    double snr_db = 15.0;
    bool sigma2_given = false; // sigma2_w key overrides the snr_db convention
    std::string rho1_mode = "e3";
    double rmax_factor = 0.0; // 0 -> 0.001^(-1/(alpha-2))
    double m1_split = 0.0;    // interferer phase-2 common-part fraction
    long n_trials = 100000;
    std::uint64_t seed = 1;
    double r1_m = 260.0;
    double r2_m = -1.0;     // < 0 -> sampled
    double psi0_rad = -1.0; // < 0 -> sampled
    double d_relay_frac = 0.5;

    double rmax() const;
    // Final values (derivations applied) for embedding into result files.
    std::vector<std::pair<std::string, std::string>> resolved() const;
};

RunConfig default_config();
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);
// Re-derives noise_power and rho1 from the primitive keys; called by parsers
// and after programmatic overrides.
void finalize(RunConfig& cfg);

} // namespace coopcell
