#pragma once
// Analytic inter-cell interference: zeta coefficients, moments at destination
// and relay, Laplace transforms, Gamma moment matching.
#include <vector>

#include "coopcell/rng.hpp"
#include "coopcell/stats.hpp"

namespace coopcell {

struct PowerProfile {
    double p_s = 0.0;    // total source power (W)
    double p_r = 0.0;    // total relay power (W)
    double p_s_b = 0.0;  // 1st-phase source power
    double p_s_m1 = 0.0; // 2nd-phase common part
    double p_s_m2 = 0.0; // 2nd-phase private part
    double p_r_m = 0.0;  // 2nd-phase relay power
    double alpha1 = 0.5, alpha2 = 0.5;

    double p_s_m() const { return p_s_m1 + p_s_m2; }
    void validate() const;
};

// Study-cell convention: P_s^b = P_s^m = p_s, P_r^m = p_r/alpha2, with t the
// common-part fraction of the phase-2 source power.
PowerProfile make_profile(double p_s, double p_r, double alpha1, double t);

struct ZetaCoefficients {
    double zeta1 = 0.0, zeta2 = 0.0, zeta3 = 0.0, zeta4 = 0.0;
};
ZetaCoefficients zeta_coefficients(double rho1, const PowerProfile& profile);

enum class InterferenceTerm { dest_phase1, dest_phase2, relay_phase1 };

struct InterferenceMoments {
    double mean = 0.0, variance = 0.0;
    InterferenceTerm term = InterferenceTerm::dest_phase1;
};

struct FieldConfig { // interferer-field geometry
    double lambda1;  // active intensity (users/m^2)
    double alpha;    // path-loss exponent (> 2)
    double rc;       // cell radius (m)
};

InterferenceMoments moments_destination(int phase, const FieldConfig& cfg,
                                        const ZetaCoefficients& z);
InterferenceMoments moments_relay(const FieldConfig& cfg, const ZetaCoefficients& z,
                                  double d_relay_bs);

// laplace_* returns the transform value (s >= 0); the *_exponent
// variants return log of it (the integral Phi with L = exp(Phi)) and also
// admit small negative s inside the convergence strip for derivative probes.
double laplace_exponent_destination(int phase, double s, const FieldConfig& cfg,
                                    const PowerProfile& profile, double rho1);
double laplace_exponent_relay(double s, const FieldConfig& cfg, const PowerProfile& profile,
                              double rho1, double d_relay_bs);
double laplace_destination(int phase, double s, const FieldConfig& cfg,
                           const PowerProfile& profile, double rho1);
double laplace_relay(double s, const FieldConfig& cfg, const PowerProfile& profile, double rho1,
                     double d_relay_bs);

GammaParams gamma_fit(const InterferenceMoments& m);
double sample_gamma(const GammaParams& p, Rng& rng);

// Moment table over relay positions d in [0, dmax_frac*rc], log-interpolated;
// lets rate averaging draw relay interference without re-running the double
// quadrature per draw.
class RelayMomentTable {
  public:
    RelayMomentTable() = default;
    RelayMomentTable(const FieldConfig& cfg, const ZetaCoefficients& z, int n_points = 49,
                     double dmax_frac = 0.98);
    double mean(double d) const;
    double variance(double d) const;
    GammaParams gamma(double d) const { return {mean(d) * mean(d) / variance(d), variance(d) / mean(d)}; }
    double dmax() const { return dmax_; }

  private:
    std::vector<double> d_, log_mean_, log_var_;
    double dmax_ = 0.0;
};

double dbm_to_w(double dbm);

} // namespace coopcell
