#include "coopcell/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace coopcell {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Stream salts partitioning the per-trial seed space by purpose.
constexpr std::uint64_t kFieldStream = 0;
constexpr std::uint64_t kStudyStream = 1;
constexpr std::uint64_t kStreamsPerTrial = 4;

inline double pow_neg_alpha(double r2, double alpha) {
    // r2 is the squared distance; returns dist^-alpha.
    if (alpha == 4.0) return 1.0 / (r2 * r2);
    if (alpha == 3.0) return 1.0 / (r2 * std::sqrt(r2));
    return std::pow(r2, -0.5 * alpha);
}

struct TrialPartials {
    double coop_sd = 0.0, coop_rd = 0.0, coop_cross = 0.0, dir_sd = 0.0;
    double coop_sr[8] = {0}, dir_sr[8] = {0};
};

void field_pass(const NetworkConfig& net, double r_lo, double r_hi, const double* d_list,
                std::size_t nd, Rng& rng, TrialPartials& out) {
    const double area = kPi * (r_hi * r_hi - r_lo * r_lo);
    const long m = rng.poisson(net.lambda1 * area);
    const double lo2 = r_lo * r_lo, hi2 = r_hi * r_hi;
    for (long k = 0; k < m; ++k) {
        const double rr = lo2 + rng.uniform() * (hi2 - lo2); // squared radius
        const double phi = rng.uniform(0.0, 2.0 * kPi);
        const bool coop = rng.uniform() < net.rho1;
        const double g_sd = rng.expo();
        const double a_sd = g_sd * pow_neg_alpha(rr, net.alpha);
        if (coop) {
            const double g_rd = rng.expo();
            const double theta2 = rng.uniform(0.0, 2.0 * kPi);
            const double thetar = rng.uniform(0.0, 2.0 * kPi);
            const double pl = pow_neg_alpha(rr, net.alpha);
            out.coop_sd += a_sd;
            out.coop_rd += g_rd * pl;
            out.coop_cross += 2.0 * std::sqrt(g_sd * g_rd) * std::cos(theta2 - thetar) * pl;
        } else {
            out.dir_sd += a_sd;
        }
        const double g_sr = rng.expo();
        if (nd > 0) {
            const double r = std::sqrt(rr), cphi = std::cos(phi);
            for (std::size_t j = 0; j < nd; ++j) {
                const double d = d_list[j];
                const double dist2 = rr + d * d - 2.0 * r * d * cphi;
                const double v = g_sr * pow_neg_alpha(dist2, net.alpha);
                if (coop)
                    out.coop_sr[j] += v;
                else
                    out.dir_sr[j] += v;
            }
        }
    }
}

} // namespace

void parallel_for(long n, int workers, const std::function<void(long)>& body) {
    if (workers <= 1) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (long i = w; i < n; i += workers) body(i);
        });
    for (auto& t : pool) t.join();
}

void InterferenceBatch::scale(const PowerProfile& pr, std::size_t d_index,
                              std::vector<double>& q_d_b, std::vector<double>& q_d_m,
                              std::vector<double>& q_r) const {
    const std::size_t n = coop_sd.size();
    q_d_b.resize(n);
    q_d_m.resize(n);
    q_r.assign(n, 0.0);
    const double cross_w = std::sqrt(pr.p_s_m1 * pr.p_r_m);
    for (std::size_t i = 0; i < n; ++i) {
        q_d_b[i] = pr.p_s_b * coop_sd[i] + pr.p_s * dir_sd[i];
        q_d_m[i] = pr.p_s_m() * coop_sd[i] + pr.p_r_m * coop_rd[i] + cross_w * coop_cross[i] +
                   pr.p_s * dir_sd[i];
    }
    if (!coop_sr.empty()) {
        if (d_index >= coop_sr.size())
            throw std::invalid_argument("InterferenceBatch::scale: bad d_index");
        for (std::size_t i = 0; i < n; ++i)
            q_r[i] = pr.p_s_b * coop_sr[d_index][i] + pr.p_s * dir_sr[d_index][i];
    }
}

InterferenceBatch interference_batch(const NetworkConfig& net, double r_lo, double r_hi,
                                     const std::vector<double>& d_list, long n,
                                     std::uint64_t seed, int workers) {
    if (!(r_hi > r_lo) || !(r_lo > 0.0))
        throw std::invalid_argument("interference_batch: need 0 < r_lo < r_hi");
    if (d_list.size() > 8)
        throw std::invalid_argument("interference_batch: at most 8 relay distances per pass");
    for (double d : d_list)
        if (d < 0.0 || d > r_hi)
            throw std::invalid_argument("interference_batch: relay distances must lie in [0, r_hi]");
    InterferenceBatch b;
    b.d_list = d_list;
    b.coop_sd.resize(std::size_t(n));
    b.coop_rd.resize(std::size_t(n));
    b.coop_cross.resize(std::size_t(n));
    b.dir_sd.resize(std::size_t(n));
    b.coop_sr.assign(d_list.size(), std::vector<double>(std::size_t(n)));
    b.dir_sr.assign(d_list.size(), std::vector<double>(std::size_t(n)));
    parallel_for(n, workers, [&](long i) {
        Rng rng = Rng::child(seed, std::uint64_t(i) * kStreamsPerTrial + kFieldStream);
        TrialPartials p;
        field_pass(net, r_lo, r_hi, d_list.data(), d_list.size(), rng, p);
        b.coop_sd[i] = p.coop_sd;
        b.coop_rd[i] = p.coop_rd;
        b.coop_cross[i] = p.coop_cross;
        b.dir_sd[i] = p.dir_sd;
        for (std::size_t j = 0; j < d_list.size(); ++j) {
            b.coop_sr[j][i] = p.coop_sr[j];
            b.dir_sr[j][i] = p.dir_sr[j];
        }
    });
    return b;
}

TrialResult simulate_trial(const RunConfig& cfg, const CellScenario& sc, PolicyKind study_policy,
                           Rng& rng) {
    const NetworkConfig& net = cfg.net;
    TrialPartials p;
    double d = sc.d_relay_bs;
    field_pass(net, net.cell_radius, cfg.rmax(), &d, 1, rng, p);
    const PowerProfile ipr = make_profile(net.p_s, net.p_r, net.alpha1, cfg.m1_split);
    TrialResult tr;
    tr.scenario = sc;
    tr.q_d_b = ipr.p_s_b * p.coop_sd + ipr.p_s * p.dir_sd;
    tr.q_d_m = ipr.p_s_m() * p.coop_sd + ipr.p_r_m * p.coop_rd +
               std::sqrt(ipr.p_s_m1 * ipr.p_r_m) * p.coop_cross + ipr.p_s * p.dir_sd;
    tr.q_r = ipr.p_s_b * p.coop_sr[0] + ipr.p_s * p.dir_sr[0];

    const double a = net.alpha;
    const double g_sd = rng.expo(), g_sr = rng.expo(), g_rd = rng.expo();
    const double raw_sd = g_sd * std::pow(sc.r1, -a);
    const double raw_sr = sc.r2 > 0.0 ? g_sr * std::pow(sc.r2, -a) : HUGE_VAL;
    const double raw_rd = g_rd * std::pow(std::max(sc.d_relay_bs, 1e-9), -a);
    const auto ch = equivalent_channels(raw_sr, raw_sd, raw_rd, tr.q_r, tr.q_d_b, tr.q_d_m,
                                        net.noise_power);
    switch (study_policy) {
    case PolicyKind::ideal: tr.cooperated = decide_ideal(ch.h_sr_eq, ch.h_sd_b_eq).cooperate; break;
    case PolicyKind::geometric: tr.cooperated = decide_geometric(sc).cooperate; break;
    case PolicyKind::hybrid:
        tr.cooperated = decide_hybrid(sc, {g_sd, g_sr, g_rd}, a).cooperate;
        break;
    }
    tr.rate = tr.cooperated ? optimize_power_split(ch, net.p_s, net.p_r, net.alpha1).result.rate
                            : direct_rate(ch, net.p_s, net.alpha1).rate;
    return tr;
}

CoopEstimate estimate_coop_prob(PolicyKind policy, const RunConfig& cfg, long n,
                                std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("estimate_coop_prob: need n >= 1");
    const NetworkConfig& net = cfg.net;
    if (net.lambda2 == 0.0) return {0.0, 0.0};
    long hits = 0;
    if (policy == PolicyKind::ideal) {
        const InterferenceModel model = build_interference_model(net);
        for (long i = 0; i < n; ++i) {
            Rng rng = Rng::child(seed, std::uint64_t(i) * kStreamsPerTrial + kStudyStream);
            const double r1 = rng.rayleigh(net.lambda1), r2 = rng.rayleigh(net.lambda2);
            const double psi0 = rng.uniform(0.0, 2.0 * kPi);
            const double d = relay_to_bs_distance(r1, r2, psi0);
            const double q_b = sample_gamma(model.dest_b, rng);
            const double q_r = sample_gamma(model.relay.gamma(std::min(d, model.relay.dmax())), rng);
            const double h_sd = rng.expo() * std::pow(r1, -net.alpha) / (q_b + net.noise_power);
            const double h_sr = rng.expo() * std::pow(r2, -net.alpha) / (q_r + net.noise_power);
            hits += decide_ideal(h_sr, h_sd).cooperate;
        }
    } else {
        // Honest geometry: the study user owns the cell covering the origin,
        // its BS is uniform in that cell, the relay is its nearest idle user.
        const Window active_win = Window::disk(0.0, 0.0, 5.3 / std::sqrt(kPi * net.lambda1));
        const double idle_r = 5.3 / std::sqrt(kPi * net.lambda2);
        for (long i = 0; i < n; ++i) {
            Rng rng = Rng::child(seed, std::uint64_t(i) * kStreamsPerTrial + kStudyStream);
            const Point2D origin{0.0, 0.0};
            std::vector<Point2D> active;
            do { active = sample_ppp(net.lambda1, active_win, rng); } while (active.empty());
            const std::size_t oi = nearest_index(origin, active);
            const Point2D owner = active[oi];
            Point2D bs{};
            long budget = 1000000;
            do {
                bs = active_win.sample(rng);
            } while (nearest_index(bs, active) != oi && --budget > 0);
            if (budget <= 0)
                throw std::runtime_error("estimate_coop_prob: cell rejection budget exhausted");
            std::vector<Point2D> idle;
            do {
                idle = sample_ppp(net.lambda2, Window::disk(owner.x, owner.y, idle_r), rng);
            } while (idle.empty());
            const auto relay = nearest_idle(owner, idle);
            const double r1 = std::hypot(bs.x - owner.x, bs.y - owner.y);
            const double r2 = relay->second;
            double psi0 = std::atan2(relay->first.y - owner.y, relay->first.x - owner.x) -
                          std::atan2(bs.y - owner.y, bs.x - owner.x);
            if (psi0 < 0) psi0 += 2.0 * kPi;
            const double d = relay_to_bs_distance(r1, r2, psi0);
            const CellScenario sc{r1, r2, psi0, d};
            if (policy == PolicyKind::geometric)
                hits += decide_geometric(sc).cooperate;
            else
                hits += decide_hybrid(sc, {rng.expo(), rng.expo(), 1.0}, net.alpha).cooperate;
        }
    }
    const double p = double(hits) / double(n);
    return {p, std::sqrt(p * (1.0 - p) / double(n))};
}

std::vector<double> sim_rate_samples(const RunConfig& cfg, PolicyKind policy,
                                     const ScenarioDist& dist, long n, std::uint64_t seed,
                                     int workers) {
    if (n < 1) throw std::invalid_argument("sim_rate_samples: need n >= 1");
    if (dist.ideal_pos)
        throw std::invalid_argument("sim_rate_samples: granted-relay mode is model-only");
    if (!(dist.r1 > 0.0)) throw std::invalid_argument("sim_rate_samples: need r1 > 0");
    std::vector<double> out(static_cast<std::size_t>(n));
    parallel_for(n, workers, [&](long i) {
        Rng rng = Rng::child(seed, std::uint64_t(i) * kStreamsPerTrial + kStudyStream);
        const double r2 = dist.r2 >= 0.0 ? dist.r2 : rng.rayleigh(cfg.net.lambda2);
        const double psi0 = dist.psi0 >= 0.0 ? dist.psi0 : rng.uniform(0.0, 2.0 * kPi);
        const CellScenario sc = make_scenario(dist.r1, r2, psi0);
        out[std::size_t(i)] = simulate_trial(cfg, sc, policy, rng).rate;
    });
    return out;
}

EmpiricalFit empirical_distribution(InterferenceTerm term, const RunConfig& cfg, double d_relay,
                                    long n, std::uint64_t seed, int workers) {
    if (n < 1000) throw std::invalid_argument("empirical_distribution: need n >= 1e3");
    const NetworkConfig& net = cfg.net;
    const bool relay_term = term == InterferenceTerm::relay_phase1;
    const std::vector<double> ds = relay_term ? std::vector<double>{d_relay} : std::vector<double>{};
    const auto batch = interference_batch(net, net.cell_radius, cfg.rmax(), ds, n, seed, workers);
    const PowerProfile ipr = make_profile(net.p_s, net.p_r, net.alpha1, cfg.m1_split);
    std::vector<double> q_b, q_m, q_r;
    batch.scale(ipr, 0, q_b, q_m, q_r);
    EmpiricalFit fit;
    fit.samples = term == InterferenceTerm::dest_phase1 ? std::move(q_b)
                  : term == InterferenceTerm::dest_phase2 ? std::move(q_m)
                                                          : std::move(q_r);
    const ZetaCoefficients z = zeta_coefficients(net.rho1, ipr);
    if (relay_term && d_relay >= net.cell_radius) {
        // Cell-edge singular point: no analytic moments; report the
        // sample-moment fit only.
        fit.sample = sample_moments(fit.samples);
        fit.fitted_gamma = {fit.sample.mean * fit.sample.mean / fit.sample.var,
                            fit.sample.var / fit.sample.mean};
        fit.ks_fitted = ks_statistic(fit.samples,
                                     [&](double q) { return gamma_cdf(q, fit.fitted_gamma); });
        fit.ks_analytic = 1.0;
        return fit;
    }
    fit.analytic = relay_term ? moments_relay(net.field(), z, d_relay)
                              : moments_destination(term == InterferenceTerm::dest_phase1 ? 1 : 2,
                                                    net.field(), z);
    fit.analytic_gamma = gamma_fit(fit.analytic);
    fit.sample = sample_moments(fit.samples);
    fit.fitted_gamma = {fit.sample.mean * fit.sample.mean / fit.sample.var,
                        fit.sample.var / fit.sample.mean};
    fit.ks_analytic =
        ks_statistic(fit.samples, [&](double q) { return gamma_cdf(q, fit.analytic_gamma); });
    fit.ks_fitted =
        ks_statistic(fit.samples, [&](double q) { return gamma_cdf(q, fit.fitted_gamma); });
    return fit;
}

} // namespace coopcell
