#pragma once
// Cooperation policies and their analytic probabilities.
#include "coopcell/geometry.hpp"
#include "coopcell/rng.hpp"

namespace coopcell {

struct FadingDraw {
    double g_sd = 1.0, g_sr = 1.0, g_rd = 1.0; // unit-mean exponential power gains
};

enum class PolicyKind { ideal, geometric, hybrid };

struct CoopDecision {
    bool cooperate = false;
    PolicyKind policy = PolicyKind::geometric;
};

// E2: r2 <= r1 and D <= r1. Ties cooperate.
CoopDecision decide_geometric(const CellScenario& sc);

// E3: g_sd r1^-a <= g_sr r2^-a and D <= r1; r2 = 0 counts as an infinitely
// strong relay link.
CoopDecision decide_hybrid(const CellScenario& sc, const FadingDraw& fading, double alpha);

// E1: equivalent source->relay gain >= equivalent source->destination gain.
CoopDecision decide_ideal(double equiv_sr_gain, double equiv_sd_gain);

// Law of beta = (g_sr/g_sd)^(1/alpha) for i.i.d. exponential gains.
double beta_pdf(double z, double alpha);
double beta_cdf(double z, double alpha);

// Closed-form cooperation probabilities by adaptive quadrature (abs tol 1e-8).
double coop_prob_geometric(double lambda1, double lambda2);
double coop_prob_hybrid(double lambda1, double lambda2, double alpha);

// Brute-force oracle on the same probability space: r1 ~ Rayleigh(l1),
// r2 ~ Rayleigh(l2), psi0 uniform, exponential fading for the hybrid policy.
struct CoopEstimate {
    double estimate, stderr_;
};
CoopEstimate coop_prob_mc(PolicyKind policy, double lambda1, double lambda2, double alpha,
                          long n, Rng& rng);

} // namespace coopcell
