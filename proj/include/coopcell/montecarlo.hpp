#pragma once
// Brute-force oracle: interferer-field realizations, empirical interference,
// cooperation frequencies and realized rates.
#include <cstdint>
#include <functional>
#include <vector>

#include "coopcell/config.hpp"
#include "coopcell/rates.hpp"

namespace coopcell {

struct TrialResult {
    double q_d_b = 0.0, q_d_m = 0.0, q_r = 0.0; // W
    bool cooperated = false;
    double rate = 0.0; // bits/use
    CellScenario scenario;
    std::uint64_t seed = 0;
};

// Power-independent per-trial partial sums of the interferer field so one
// field pass serves any transmit-power scaling. Destination partials:
//   q_d_b = p_s_b*coop_sd + p_s*dir_sd
//   q_d_m = p_s_m*coop_sd + p_r_m*coop_rd + sqrt(p_s_m1*p_r_m)*coop_cross + p_s*dir_sd
// Relay partials (per requested relay distance d):
//   q_r   = p_s_b*coop_sr[d] + p_s*dir_sr[d]
struct InterferenceBatch {
    std::vector<double> coop_sd, coop_rd, coop_cross, dir_sd;
    std::vector<std::vector<double>> coop_sr, dir_sr; // [d_index][trial]
    std::vector<double> d_list;

    void scale(const PowerProfile& pr, std::size_t d_index, std::vector<double>& q_d_b,
               std::vector<double>& q_d_m, std::vector<double>& q_r) const;
};

// Trials are seeded per index from `seed`; identical results for any worker
// count. Interferers live on the annulus [r_lo, r_hi].
InterferenceBatch interference_batch(const NetworkConfig& net, double r_lo, double r_hi,
                                     const std::vector<double>& d_list, long n,
                                     std::uint64_t seed, int workers = 1);

TrialResult simulate_trial(const RunConfig& cfg, const CellScenario& scenario,
                           PolicyKind study_policy, Rng& rng);

// Full-PPP estimate for the geometric/hybrid policies; the ideal policy uses
// the analytic scenario space with Gamma-model interference (full-E1
// interference coupling is not simulable).
CoopEstimate estimate_coop_prob(PolicyKind policy, const RunConfig& cfg, long n,
                                std::uint64_t seed);

struct EmpiricalFit {
    InterferenceMoments analytic;
    GammaParams analytic_gamma, fitted_gamma;
    MeanVar sample;
    double ks_analytic = 0.0, ks_fitted = 0.0;
    std::vector<double> samples;
};

EmpiricalFit empirical_distribution(InterferenceTerm term, const RunConfig& cfg, double d_relay,
                                    long n, std::uint64_t seed, int workers = 1);

// Per-trial policy-gated rates under the brute-force field. Scenario draws
// precede the field pass, so reruns with power-only config changes share all
// randomness (common random numbers across a power sweep).
std::vector<double> sim_rate_samples(const RunConfig& cfg, PolicyKind policy,
                                     const ScenarioDist& dist, long n, std::uint64_t seed,
                                     int workers = 1);

void parallel_for(long n, int workers, const std::function<void(long)>& body);

} // namespace coopcell
