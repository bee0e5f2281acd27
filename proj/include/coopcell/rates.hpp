#pragma once
// Achievable rates: equivalent channels, PDF relaying rate, direct rate,
// power-split optimization and policy-averaged rates.
#include "coopcell/config.hpp"
#include "coopcell/interference.hpp"
#include "coopcell/policies.hpp"

namespace coopcell {

struct EquivalentChannels {
    double h_sr_eq = 0.0, h_sd_b_eq = 0.0, h_sd_m_eq = 0.0, h_rd_eq = 0.0;
};

// Raw |h|^2 gains (path loss times fading) normalized by the matching
// interference-plus-noise power. h_sd feeds both phases, normalized by the
// phase's own interference.
EquivalentChannels equivalent_channels(double raw_sr, double raw_sd, double raw_rd, double q_r,
                                       double q_d_b, double q_d_m, double sigma2);

enum class RateMode { relayed, direct };

struct RateResult {
    double rate = 0.0; // bits/use
    RateMode mode = RateMode::direct;
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
};

RateResult pdf_rate(const EquivalentChannels& ch, const PowerProfile& alloc);
RateResult direct_rate(const EquivalentChannels& ch, double p_s, double alpha1);

struct PowerSplit {
    double t = 0.0; // common-part fraction of phase-2 source power
    PowerProfile profile;
    RateResult result;
};
// Grid of 101 points over t in [0,1], golden-section refinement to 1e-4.
PowerSplit optimize_power_split(const EquivalentChannels& ch, double p_s, double p_r,
                                double alpha1);

// Gamma interference models driving the analytic rate path.
struct InterferenceModel {
    GammaParams dest_b, dest_m;
    RelayMomentTable relay;
    double sigma2 = 0.0;
};
InterferenceModel build_interference_model(const NetworkConfig& net);

struct ScenarioDist {
    double r1 = 0.0;
    double r2 = -1.0;      // < 0 -> Rayleigh(lambda2)
    double psi0 = -1.0;    // < 0 -> uniform [0, 2pi)
    bool ideal_pos = false; // relay granted at 0.4 r1 toward the BS, always used
};

struct RateAverage {
    double rate_mean = 0.0;   // policy-gated average
    double rate_se = 0.0;
    double direct_mean = 0.0; // same draws, direct transmission
    double coop_fraction = 0.0;
};

// `samples`, when given, receives the per-draw policy-gated rate.
RateAverage average_rate(PolicyKind policy, const NetworkConfig& net,
                         const InterferenceModel& model, const ScenarioDist& dist, long n_draws,
                         Rng& rng, std::vector<double>* samples = nullptr);

} // namespace coopcell
