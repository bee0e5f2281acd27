#include "coopcell/interference.hpp"

#include <cmath>
#include <stdexcept>

#include "coopcell/quad.hpp"

namespace coopcell {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_field(const FieldConfig& cfg) {
    if (!(cfg.lambda1 >= 0.0) || !(cfg.alpha > 2.0) || !(cfg.rc > 0.0))
        throw std::invalid_argument("field config: need lambda1 >= 0, alpha > 2, rc > 0");
}

double rel_close(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
} // namespace

void PowerProfile::validate() const {
    if (p_s < 0.0 || p_r < 0.0 || p_s_b < 0.0 || p_s_m1 < 0.0 || p_s_m2 < 0.0 || p_r_m < 0.0)
        throw std::invalid_argument("power profile: negative power");
    if (!(alpha1 > 0.0) || !(alpha1 < 1.0) || rel_close(alpha1 + alpha2, 1.0) > 1e-12)
        throw std::invalid_argument("power profile: need alpha1 in (0,1), alpha1 + alpha2 = 1");
    if (p_s > 0.0 && rel_close(alpha1 * p_s_b + alpha2 * p_s_m(), p_s) > 1e-9)
        throw std::invalid_argument("power profile: phase powers violate the source average");
    if (p_r > 0.0 && rel_close(alpha2 * p_r_m, p_r) > 1e-9)
        throw std::invalid_argument("power profile: relay power violates the relay average");
}

PowerProfile make_profile(double p_s, double p_r, double alpha1, double t) {
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("make_profile: t must lie in [0,1]");
    PowerProfile p;
    p.p_s = p_s;
    p.p_r = p_r;
    p.alpha1 = alpha1;
    p.alpha2 = 1.0 - alpha1;
    p.p_s_b = p_s;
    p.p_s_m1 = t * p_s;
    p.p_s_m2 = (1.0 - t) * p_s;
    p.p_r_m = p_r / p.alpha2;
    p.validate();
    return p;
}

ZetaCoefficients zeta_coefficients(double rho1, const PowerProfile& pr) {
    if (rho1 < 0.0 || rho1 > 1.0)
        throw std::invalid_argument("zeta_coefficients: rho1 must lie in [0,1]");
    pr.validate();
    const double ps = pr.p_s, psb = pr.p_s_b, psm = pr.p_s_m(), prm = pr.p_r_m;
    ZetaCoefficients z;
    z.zeta1 = rho1 * psb + (1.0 - rho1) * ps;
    z.zeta2 = 2.0 * (rho1 * psb * psb + (1.0 - rho1) * ps * ps);
    z.zeta3 = rho1 * (psm + prm) + (1.0 - rho1) * ps;
    z.zeta4 = 2.0 * (rho1 * (psm + prm) * (psm + prm) + (1.0 - rho1) * ps * ps -
                     rho1 * psm * prm);
    return z;
}

InterferenceMoments moments_destination(int phase, const FieldConfig& cfg,
                                        const ZetaCoefficients& z) {
    check_field(cfg);
    if (phase != 1 && phase != 2) throw std::invalid_argument("moments_destination: phase is 1 or 2");
    if (!(cfg.alpha > 2.0))
        throw std::runtime_error("moments_destination: mean diverges for alpha <= 2");
    const double zm = phase == 1 ? z.zeta1 : z.zeta3;
    const double zv = phase == 1 ? z.zeta2 : z.zeta4;
    InterferenceMoments m;
    m.term = phase == 1 ? InterferenceTerm::dest_phase1 : InterferenceTerm::dest_phase2;
    m.mean = 2.0 * kPi * cfg.lambda1 * zm * std::pow(cfg.rc, 2.0 - cfg.alpha) / (cfg.alpha - 2.0);
    m.variance =
        kPi * cfg.lambda1 * zv * std::pow(cfg.rc, 2.0 * (1.0 - cfg.alpha)) / (cfg.alpha - 1.0);
    return m;
}

namespace {

// Radial integral over the field: int_rc^inf dist(r,theta)^-p r dr mapped by
// u = rc/r, integrated over theta in [0, pi] and doubled (symmetry).
double field_integral(const FieldConfig& cfg, double d, double p, double rel_tol) {
    const double rc = cfg.rc;
    const auto radial = [&](double theta) {
        const double cost = std::cos(theta);
        const auto inner = [&](double u) {
            const double r = rc / u;
            const double dist2 = r * r + d * d - 2.0 * r * d * cost;
            return std::pow(dist2, -0.5 * p) / (u * u * u);
        };
        return rc * rc * integrate(inner, 0.0, 1.0, 1e-300, rel_tol * 0.03);
    };
    return 2.0 * integrate(radial, 0.0, kPi, 1e-300, rel_tol);
}

} // namespace

InterferenceMoments moments_relay(const FieldConfig& cfg, const ZetaCoefficients& z,
                                  double d_relay_bs) {
    check_field(cfg);
    if (d_relay_bs < 0.0) throw std::invalid_argument("moments_relay: d must be >= 0");
    if (d_relay_bs >= cfg.rc)
        throw std::runtime_error("moments_relay: relay at or beyond the cell edge (D >= Rc), "
                                 "interference integral is singular");
    InterferenceMoments m;
    m.term = InterferenceTerm::relay_phase1;
    m.mean = cfg.lambda1 * z.zeta1 * field_integral(cfg, d_relay_bs, cfg.alpha, 1e-7);
    m.variance = cfg.lambda1 * z.zeta2 * field_integral(cfg, d_relay_bs, 2.0 * cfg.alpha, 1e-7);
    return m;
}

namespace {

// Cancellation-free 1 - L_J for the Bernoulli power mixture; a/b/c are
// s * pathgain * power arguments of the exponential-fading factor 1/(1+x).
double one_minus_lj_phase1(double a, double b, double rho1) {
    return rho1 * (a / (1.0 + a)) + (1.0 - rho1) * (b / (1.0 + b));
}
double one_minus_lj_phase2(double a, double c, double b, double rho1) {
    return rho1 * ((a + c + a * c) / ((1.0 + a) * (1.0 + c))) +
           (1.0 - rho1) * (b / (1.0 + b));
}

} // namespace

double laplace_exponent_destination(int phase, double s, const FieldConfig& cfg,
                                    const PowerProfile& pr, double rho1) {
    check_field(cfg);
    if (phase != 1 && phase != 2)
        throw std::invalid_argument("laplace_destination: phase is 1 or 2");
    if (s == 0.0 || cfg.lambda1 == 0.0) return 0.0;
    if (s < 0.0) {
        // Analytic continuation for derivative probes: valid while every
        // fading factor 1 + s*q*P stays positive (worst case at r = Rc).
        const double q_max = std::pow(cfg.rc, -cfg.alpha);
        const double p_max = std::max({pr.p_s, pr.p_s_b, pr.p_s_m(), pr.p_r_m});
        if (-s * q_max * p_max >= 1.0)
            throw std::domain_error("laplace_exponent_destination: s below convergence strip");
    }
    const double rc = cfg.rc;
    const auto f = [&](double u) {
        const double q = std::pow(rc / u, -cfg.alpha);
        const double b = s * q * pr.p_s;
        double v;
        if (phase == 1)
            v = one_minus_lj_phase1(s * q * pr.p_s_b, b, rho1);
        else
            v = one_minus_lj_phase2(s * q * pr.p_s_m(), s * q * pr.p_r_m, b, rho1);
        return v / (u * u * u);
    };
    const double integral = rc * rc * integrate(f, 0.0, 1.0, 1e-300, 1e-9);
    return -2.0 * kPi * cfg.lambda1 * integral;
}

double laplace_exponent_relay(double s, const FieldConfig& cfg, const PowerProfile& pr,
                              double rho1, double d_relay_bs) {
    check_field(cfg);
    if (d_relay_bs < 0.0 || d_relay_bs >= cfg.rc)
        throw std::runtime_error("laplace_relay: need 0 <= D < Rc");
    if (s == 0.0 || cfg.lambda1 == 0.0) return 0.0;
    if (s < 0.0) {
        const double q_max = std::pow(cfg.rc - d_relay_bs, -cfg.alpha);
        const double p_max = std::max(pr.p_s, pr.p_s_b);
        if (-s * q_max * p_max >= 1.0)
            throw std::domain_error("laplace_exponent_relay: s below convergence strip");
    }
    const double rc = cfg.rc, d = d_relay_bs;
    const auto radial = [&](double theta) {
        const double cost = std::cos(theta);
        const auto inner = [&](double u) {
            const double r = rc / u;
            const double q = std::pow(r * r + d * d - 2.0 * r * d * cost, -0.5 * cfg.alpha);
            return one_minus_lj_phase1(s * q * pr.p_s_b, s * q * pr.p_s, rho1) / (u * u * u);
        };
        return rc * rc * integrate(inner, 0.0, 1.0, 1e-300, 3e-9);
    };
    const double integral = 2.0 * integrate(radial, 0.0, kPi, 1e-300, 1e-7);
    return -cfg.lambda1 * integral;
}

double laplace_destination(int phase, double s, const FieldConfig& cfg, const PowerProfile& pr,
                           double rho1) {
    if (s < 0.0) throw std::invalid_argument("laplace_destination: s must be >= 0");
    return std::exp(laplace_exponent_destination(phase, s, cfg, pr, rho1));
}

double laplace_relay(double s, const FieldConfig& cfg, const PowerProfile& pr, double rho1,
                     double d_relay_bs) {
    if (s < 0.0) throw std::invalid_argument("laplace_relay: s must be >= 0");
    return std::exp(laplace_exponent_relay(s, cfg, pr, rho1, d_relay_bs));
}

GammaParams gamma_fit(const InterferenceMoments& m) {
    if (!(m.mean > 0.0) || !(m.variance > 0.0))
        throw std::invalid_argument("gamma_fit: mean and variance must be positive");
    return {m.mean * m.mean / m.variance, m.variance / m.mean};
}

double sample_gamma(const GammaParams& p, Rng& rng) {
    if (!(p.k > 0.0) || !(p.theta > 0.0)) throw std::invalid_argument("sample_gamma: bad params");
    return rng.gamma(p.k, p.theta);
}

RelayMomentTable::RelayMomentTable(const FieldConfig& cfg, const ZetaCoefficients& z,
                                   int n_points, double dmax_frac) {
    if (n_points < 2 || !(dmax_frac > 0.0) || !(dmax_frac < 1.0))
        throw std::invalid_argument("RelayMomentTable: bad grid");
    dmax_ = dmax_frac * cfg.rc;
    d_.resize(n_points);
    log_mean_.resize(n_points);
    log_var_.resize(n_points);
    for (int i = 0; i < n_points; ++i) {
        d_[i] = dmax_ * double(i) / double(n_points - 1);
        const auto m = moments_relay(cfg, z, d_[i]);
        log_mean_[i] = std::log(m.mean);
        log_var_[i] = std::log(m.variance);
    }
}

namespace {
double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    std::size_t hi = 1;
    while (xs[hi] < x) ++hi;
    const double w = (x - xs[hi - 1]) / (xs[hi] - xs[hi - 1]);
    return ys[hi - 1] + w * (ys[hi] - ys[hi - 1]);
}
} // namespace

double RelayMomentTable::mean(double d) const { return std::exp(interp(d_, log_mean_, d)); }
double RelayMomentTable::variance(double d) const { return std::exp(interp(d_, log_var_, d)); }

double dbm_to_w(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

} // namespace coopcell
