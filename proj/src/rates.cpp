#include "coopcell/rates.hpp"

#include <cmath>
#include <stdexcept>

namespace coopcell {

namespace {
constexpr double kPi = 3.14159265358979323846;

double log2_1p(double x) { return std::log2(1.0 + x); }
} // namespace

EquivalentChannels equivalent_channels(double raw_sr, double raw_sd, double raw_rd, double q_r,
                                       double q_d_b, double q_d_m, double sigma2) {
    if (raw_sr < 0.0 || raw_sd < 0.0 || raw_rd < 0.0 || q_r < 0.0 || q_d_b < 0.0 ||
        q_d_m < 0.0 || sigma2 < 0.0)
        throw std::invalid_argument("equivalent_channels: negative input");
    if (!(q_r + sigma2 > 0.0) || !(q_d_b + sigma2 > 0.0) || !(q_d_m + sigma2 > 0.0))
        throw std::invalid_argument("equivalent_channels: zero interference-plus-noise");
    EquivalentChannels ch;
    ch.h_sr_eq = raw_sr / (q_r + sigma2);
    ch.h_sd_b_eq = raw_sd / (q_d_b + sigma2);
    ch.h_sd_m_eq = raw_sd / (q_d_m + sigma2);
    ch.h_rd_eq = raw_rd / (q_d_m + sigma2);
    return ch;
}

RateResult pdf_rate(const EquivalentChannels& ch, const PowerProfile& a) {
    a.validate();
    RateResult r;
    r.mode = RateMode::relayed;
    r.c1 = a.alpha1 * log2_1p(ch.h_sr_eq * a.p_s_b);
    r.c2 = a.alpha2 * log2_1p(ch.h_sd_m_eq * a.p_s_m2);
    const double amp = std::sqrt(ch.h_sd_m_eq * a.p_s_m1) + std::sqrt(ch.h_rd_eq * a.p_r_m);
    r.c3 = a.alpha1 * log2_1p(ch.h_sd_b_eq * a.p_s_b) +
           a.alpha2 * log2_1p(ch.h_sd_m_eq * a.p_s_m2 + amp * amp);
    r.rate = std::min(r.c1 + r.c2, r.c3);
    return r;
}

RateResult direct_rate(const EquivalentChannels& ch, double p_s, double alpha1) {
    if (p_s < 0.0) throw std::invalid_argument("direct_rate: p_s must be >= 0");
    RateResult r;
    r.mode = RateMode::direct;
    r.c1 = alpha1 * log2_1p(ch.h_sd_b_eq * p_s);
    r.c2 = (1.0 - alpha1) * log2_1p(ch.h_sd_m_eq * p_s);
    r.rate = r.c1 + r.c2;
    return r;
}

PowerSplit optimize_power_split(const EquivalentChannels& ch, double p_s, double p_r,
                                double alpha1) {
    const auto rate_at = [&](double t) { return pdf_rate(ch, make_profile(p_s, p_r, alpha1, t)); };
    double best_t = 0.0;
    double best = -1.0;
    for (int i = 0; i <= 100; ++i) {
        const double t = i / 100.0;
        const double v = rate_at(t).rate;
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    // Golden-section refinement around the best grid point (rate is unimodal
    // in t: min of an increasing and a decreasing branch).
    double lo = std::max(0.0, best_t - 0.01), hi = std::min(1.0, best_t + 0.01);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
    double f1 = rate_at(x1).rate, f2 = rate_at(x2).rate;
    while (hi - lo > 1e-4) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = rate_at(x2).rate;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = rate_at(x1).rate;
        }
    }
    const double t_ref = 0.5 * (lo + hi);
    if (rate_at(t_ref).rate > best) best_t = t_ref;
    PowerSplit out;
    out.t = best_t;
    out.profile = make_profile(p_s, p_r, alpha1, best_t);
    out.result = rate_at(best_t);
    return out;
}

InterferenceModel build_interference_model(const NetworkConfig& net) {
    const PowerProfile pr = make_profile(net.p_s, net.p_r, net.alpha1, 0.0);
    const ZetaCoefficients z = zeta_coefficients(net.rho1, pr);
    InterferenceModel m;
    m.dest_b = gamma_fit(moments_destination(1, net.field(), z));
    m.dest_m = gamma_fit(moments_destination(2, net.field(), z));
    m.relay = RelayMomentTable(net.field(), z);
    m.sigma2 = net.noise_power;
    return m;
}

RateAverage average_rate(PolicyKind policy, const NetworkConfig& net,
                         const InterferenceModel& model, const ScenarioDist& dist, long n_draws,
                         Rng& rng, std::vector<double>* samples) {
    if (n_draws < 1) throw std::invalid_argument("average_rate: need n_draws >= 1");
    if (!(dist.r1 > 0.0)) throw std::invalid_argument("average_rate: need r1 > 0");
    const double a = net.alpha;
    const double pl1 = std::pow(dist.r1, -a);
    double sum = 0.0, sum2 = 0.0, dsum = 0.0;
    long coop_n = 0;
    if (samples) samples->reserve(samples->size() + std::size_t(n_draws));
    for (long i = 0; i < n_draws; ++i) {
        double r2, psi0;
        if (dist.ideal_pos) {
            r2 = 0.4 * dist.r1;
            psi0 = 0.0;
        } else {
            r2 = dist.r2 >= 0.0 ? dist.r2 : rng.rayleigh(net.lambda2);
            psi0 = dist.psi0 >= 0.0 ? dist.psi0 : rng.uniform(0.0, 2.0 * kPi);
        }
        const double d = relay_to_bs_distance(dist.r1, r2, psi0);
        const double g_sd = rng.expo(), g_sr = rng.expo(), g_rd = rng.expo();
        const double q_b = sample_gamma(model.dest_b, rng);
        const double q_m = sample_gamma(model.dest_m, rng);
        double q_r = 0.0, raw_sr = HUGE_VAL;
        if (r2 > 0.0) {
            q_r = sample_gamma(model.relay.gamma(std::min(d, model.relay.dmax())), rng);
            raw_sr = g_sr * std::pow(r2, -a);
        }
        const auto ch = equivalent_channels(raw_sr, g_sd * pl1,
                                            g_rd * std::pow(std::max(d, 1e-9), -a), q_r, q_b,
                                            q_m, model.sigma2);
        bool coop;
        if (dist.ideal_pos)
            coop = true;
        else if (policy == PolicyKind::ideal)
            coop = decide_ideal(ch.h_sr_eq, ch.h_sd_b_eq).cooperate;
        else if (policy == PolicyKind::geometric)
            coop = r2 <= dist.r1 && d <= dist.r1;
        else
            coop = (r2 == 0.0 || g_sd * pl1 <= g_sr * std::pow(r2, -a)) && d <= dist.r1;
        const double direct = direct_rate(ch, net.p_s, net.alpha1).rate;
        double rate = direct;
        if (coop) {
            ++coop_n;
            rate = optimize_power_split(ch, net.p_s, net.p_r, net.alpha1).result.rate;
        }
        sum += rate;
        sum2 += rate * rate;
        dsum += direct;
        if (samples) samples->push_back(rate);
    }
    RateAverage out;
    const double n = double(n_draws);
    out.rate_mean = sum / n;
    out.direct_mean = dsum / n;
    out.coop_fraction = double(coop_n) / n;
    const double var = std::max(0.0, (sum2 - sum * sum / n) / std::max(n - 1.0, 1.0));
    out.rate_se = std::sqrt(var / n);
    return out;
}

} // namespace coopcell
