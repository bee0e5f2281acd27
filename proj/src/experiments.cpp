#include "coopcell/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "coopcell/acceptance.hpp"
#include "coopcell/montecarlo.hpp"

namespace coopcell {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t tag_seed(std::uint64_t seed, const char* tag) {
    std::uint64_t h = 1469598103934665603ull;
    for (const char* p = tag; *p; ++p) {
        h ^= std::uint64_t(static_cast<unsigned char>(*p));
        h *= 1099511628211ull;
    }
    std::uint64_t x = seed ^ h;
    return detail::splitmix64(x);
}

double ecdf(const std::vector<double>& sorted, double x) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
    return double(it - sorted.begin()) / double(sorted.size());
}

// Nearest-point CDF validation of one distance law against its full-PPP
// sampler (fig4: serving link, fig5: relay link).
Table distance_cdf(const RunConfig& cfg, bool direct_law, int workers, std::uint64_t seed) {
    const double lam = direct_law ? cfg.net.lambda1 : cfg.net.lambda2;
    const double win_r = 5.3 / std::sqrt(kPi * lam);
    const long n = cfg.n_trials;
    std::vector<double> s(static_cast<std::size_t>(n));
    parallel_for(n, workers, [&](long i) {
        Rng rng = Rng::child(seed, std::uint64_t(i));
        s[std::size_t(i)] = direct_law ? sample_r1_full(lam, win_r, rng)
                                       : sample_r2_full(lam, win_r, rng);
    });
    std::sort(s.begin(), s.end());
    Table t;
    t.columns = {"r_m", "cdf_analytic", "cdf_empirical", "stderr"};
    const double r_hi = 2.2 / std::sqrt(kPi * lam);
    for (int k = 1; k <= 40; ++k) {
        const double r = r_hi * k / 40.0;
        const double fa = 1.0 - std::exp(-lam * kPi * r * r);
        const double fe = ecdf(s, r);
        t.add_row({r, fa, fe, std::sqrt(std::max(fe * (1.0 - fe), 1e-12) / double(n))});
    }
    return t;
}

Table fig6_table(const RunConfig& cfg, std::uint64_t seed) {
    Table t;
    t.columns = {"ratio", "rho2_analytic", "rho3_analytic", "rho_mc", "stderr"};
    const double l1 = cfg.net.lambda1;
    for (double ratio : {1.0, 2.0, 4.0, 6.0, 8.0, 10.0}) {
        RunConfig c = cfg;
        c.net.lambda2 = ratio * l1;
        const double rho2 = coop_prob_geometric(l1, c.net.lambda2);
        const double rho3 = coop_prob_hybrid(l1, c.net.lambda2, c.net.alpha);
        const CoopEstimate est =
            estimate_coop_prob(PolicyKind::hybrid, c, cfg.n_trials, seed);
        t.add_row({ratio, rho2, rho3, est.estimate, est.stderr_});
    }
    return t;
}

Table fig7_table(const RunConfig& cfg, int workers, std::uint64_t seed) {
    Table t;
    t.columns = {"term",    "mean_analytic", "var_analytic", "mean_mc",
                 "var_mc",  "ks_analytic",   "ks_fitted"};
    const double d = cfg.d_relay_frac * cfg.net.cell_radius;
    int id = 1;
    for (InterferenceTerm term :
         {InterferenceTerm::dest_phase1, InterferenceTerm::dest_phase2,
          InterferenceTerm::relay_phase1}) {
        const EmpiricalFit f =
            empirical_distribution(term, cfg, d, cfg.n_trials, seed + std::uint64_t(id), workers);
        t.add_row({double(id), f.analytic.mean, f.analytic.variance, f.sample.mean, f.sample.var,
                   f.ks_analytic, f.ks_fitted});
        ++id;
    }
    return t;
}

Table fig8_table(const RunConfig& cfg, int workers, std::uint64_t seed) {
    Table t;
    t.columns = {"p_dbm", "r1_m", "ks"};
    const long n_model = cfg.n_trials;
    const long n_sim = std::max(2000L, cfg.n_trials * 2 / 5);
    const std::vector<double> powers = {23.0, 26.0, 29.0, 32.0};
    const std::vector<double> r1s = {150.0, 285.0};
    std::vector<InterferenceModel> models;
    std::vector<RunConfig> cfgs;
    for (double p : powers) {
        RunConfig c = cfg;
        c.net.p_s = c.net.p_r = dbm_to_w(p); // sigma2 pinned at the base convention
        cfgs.push_back(c);
        models.push_back(build_interference_model(c.net));
    }
    for (std::size_t ri = 0; ri < r1s.size(); ++ri) {
        for (std::size_t pi = 0; pi < powers.size(); ++pi) {
            const ScenarioDist dist{r1s[ri], -1.0, -1.0, false};
            std::vector<double> model_rates;
            Rng rng = Rng::child(tag_seed(seed, "fig8-model"), ri);
            average_rate(PolicyKind::hybrid, cfgs[pi].net, models[pi], dist, n_model, rng,
                         &model_rates);
            const std::vector<double> sim_rates = sim_rate_samples(
                cfgs[pi], PolicyKind::hybrid, dist, n_sim, tag_seed(seed, "fig8-sim") + ri,
                workers);
            t.add_row({powers[pi], r1s[ri], ks_two_sample(model_rates, sim_rates)});
        }
    }
    return t;
}

Table fig9_table(const RunConfig& cfg, int workers, std::uint64_t seed) {
    Table t;
    t.columns = {"d_frac", "ks_analytic", "ks_fitted"};
    int k = 0;
    for (double frac : {0.3, 0.5, 0.7, 0.9, 1.0}) {
        const EmpiricalFit f =
            empirical_distribution(InterferenceTerm::relay_phase1, cfg,
                                   frac * cfg.net.cell_radius, cfg.n_trials,
                                   seed + std::uint64_t(++k), workers);
        t.add_row({frac, f.ks_analytic, f.ks_fitted});
    }
    return t;
}

Table fig10_table(const RunConfig& cfg, int workers, std::uint64_t seed) {
    Table t;
    t.columns = {"r2_frac",     "rate_e1_model", "rate_e3_model",
                 "rate_direct", "rate_e1_sim",   "sim_stderr"};
    const double r1 = cfg.r1_m;
    const long n_model = std::max(2000L, cfg.n_trials / 5);
    const long n_sim = std::max(1000L, cfg.n_trials / 20);
    const InterferenceModel model = build_interference_model(cfg.net);
    for (int k = 1; k <= 19; ++k) {
        const double frac = 0.05 * k;
        const ScenarioDist dist{r1, frac * r1, 0.0, false};
        Rng rng1 = Rng::child(tag_seed(seed, "fig10-model"), 0);
        const RateAverage e1 =
            average_rate(PolicyKind::ideal, cfg.net, model, dist, n_model, rng1);
        Rng rng3 = Rng::child(tag_seed(seed, "fig10-model"), 0);
        const RateAverage e3 =
            average_rate(PolicyKind::hybrid, cfg.net, model, dist, n_model, rng3);
        const std::vector<double> sim = sim_rate_samples(
            cfg, PolicyKind::ideal, dist, n_sim, tag_seed(seed, "fig10-sim"), workers);
        const MeanVar mv = sample_moments(sim);
        t.add_row({frac, e1.rate_mean, e3.rate_mean, e3.direct_mean, mv.mean,
                   std::sqrt(mv.var / double(sim.size()))});
    }
    return t;
}

Table fig11_table(const RunConfig& cfg, std::uint64_t seed) {
    Table t;
    t.columns = {"r1_m", "best_r2_frac", "best_rate"};
    const long n = std::max(2000L, cfg.n_trials / 20);
    const InterferenceModel model = build_interference_model(cfg.net);
    for (double r1 = 20.0; r1 <= 290.0 + 1e-9; r1 += 30.0) {
        double best_frac = 0.0, best = -1.0;
        for (int k = 1; k <= 19; ++k) {
            const double frac = 0.05 * k;
            Rng rng = Rng::child(tag_seed(seed, "fig11"), 0);
            const RateAverage ra = average_rate(PolicyKind::ideal, cfg.net, model,
                                                {r1, frac * r1, 0.0, false}, n, rng);
            if (ra.rate_mean > best) {
                best = ra.rate_mean;
                best_frac = frac;
            }
        }
        t.add_row({r1, best_frac, best});
    }
    return t;
}

Table fig12_table(const RunConfig& cfg, std::uint64_t seed) {
    Table t;
    t.columns = {"r1_m", "gain_e3", "gain_ideal"};
    const long n = std::max(2000L, cfg.n_trials / 5);
    const InterferenceModel model = build_interference_model(cfg.net);
    for (double r1 = 30.0; r1 <= 290.0 + 1e-9; r1 += 20.0) {
        Rng rng = Rng::child(tag_seed(seed, "fig12"), 0);
        const RateAverage avg =
            average_rate(PolicyKind::hybrid, cfg.net, model, {r1, -1.0, -1.0, false}, n, rng);
        Rng rng2 = Rng::child(tag_seed(seed, "fig12"), 0);
        const RateAverage ideal =
            average_rate(PolicyKind::hybrid, cfg.net, model, {r1, -1.0, -1.0, true}, n, rng2);
        t.add_row({r1, avg.rate_mean / avg.direct_mean - 1.0,
                   ideal.rate_mean / ideal.direct_mean - 1.0});
    }
    return t;
}

Table fig13_table(const RunConfig& cfg, std::uint64_t seed) {
    Table t;
    t.columns = {"ratio", "rc_m", "gain"};
    const long n = std::max(2000L, cfg.n_trials / 5);
    for (double ratio : {1.0, 2.0, 4.0, 6.0})
        for (double rc : {cfg.net.cell_radius, 2.0 * cfg.net.cell_radius})
            t.add_row({ratio, rc, half_ring_gain(cfg, ratio, rc, n, seed)});
    return t;
}

Table acceptance_table(const RunConfig& cfg, int workers, std::ostream* log) {
    const auto results = run_acceptance(cfg, workers, log);
    Table t;
    t.columns = {"criterion", "pass", "expected_fail"};
    for (std::size_t i = 0; i < results.size(); ++i)
        t.add_row({double(i + 1), results[i].pass ? 1.0 : 0.0,
                   results[i].expected_fail ? 1.0 : 0.0});
    return t;
}

} // namespace

double half_ring_gain(const RunConfig& base, double ratio, double rc, long n_draws,
                      std::uint64_t seed) {
    if (!(ratio > 0.0) || !(rc > 0.0) || n_draws < 1)
        throw std::invalid_argument("half_ring_gain: bad arguments");
    RunConfig c = base;
    c.net.lambda2 = ratio * c.net.lambda1;
    c.net.cell_radius = rc;
    c.sigma2_given = true; // noise stays at the base-cell convention
    finalize(c);
    const InterferenceModel model = build_interference_model(c.net);
    Rng rng = Rng::child(tag_seed(seed, "ring"), 0);
    // Cell-edge half ring: r1 from the Rayleigh law truncated to [rc/2, rc]
    // by inverse transform, one fading draw per position.
    const double lam1 = c.net.lambda1;
    const double u_lo = std::exp(-lam1 * kPi * rc * rc);
    const double u_hi = std::exp(-lam1 * kPi * rc * rc / 4.0);
    double rate_sum = 0.0, direct_sum = 0.0;
    for (long i = 0; i < n_draws; ++i) {
        const double u = u_lo + rng.uniform() * (u_hi - u_lo);
        const double r1 = std::sqrt(-std::log(u) / (kPi * lam1));
        const RateAverage ra =
            average_rate(PolicyKind::hybrid, c.net, model, {r1, -1.0, -1.0, false}, 1, rng);
        rate_sum += ra.rate_mean;
        direct_sum += ra.direct_mean;
    }
    return rate_sum / direct_sum - 1.0;
}

const std::vector<ExperimentInfo>& experiment_registry() {
    static const std::vector<ExperimentInfo> reg = {
        {"acceptance", "acceptance suite: one pass/fail row per criterion"},
        {"fig10", "average rate vs relay position r2/r1 (models + ideal-policy simulation)"},
        {"fig11", "rate-optimal relay position vs source-destination distance"},
        {"fig12", "relative rate gain of relaying vs r1 (policy and granted-relay)"},
        {"fig13", "cell-edge half-ring rate gain vs idle-user ratio, two cell sizes"},
        {"fig4", "serving-distance law: analytic CDF vs full-PPP cell sampling"},
        {"fig5", "relay-distance law: analytic CDF vs nearest-idle sampling"},
        {"fig6", "cooperation probability vs idle ratio: analytic vs simulation"},
        {"fig7", "interference moments and Gamma fits per term vs simulation"},
        {"fig8", "rate-distribution KS (model vs simulation) across transmit power"},
        {"fig9", "relay-interference Gamma fit quality vs relay position"},
    };
    return reg;
}

Table run_experiment(const std::string& id, const RunConfig& cfg, int workers,
                     std::ostream* log) {
    if (workers < 1) throw std::invalid_argument("run_experiment: workers must be >= 1");
    const std::uint64_t seed = cfg.seed;
    if (id == "fig4") return distance_cdf(cfg, true, workers, tag_seed(seed, "fig4"));
    if (id == "fig5") return distance_cdf(cfg, false, workers, tag_seed(seed, "fig5"));
    if (id == "fig6") return fig6_table(cfg, tag_seed(seed, "fig6"));
    if (id == "fig7") return fig7_table(cfg, workers, tag_seed(seed, "fig7"));
    if (id == "fig8") return fig8_table(cfg, workers, seed);
    if (id == "fig9") return fig9_table(cfg, workers, tag_seed(seed, "fig9"));
    if (id == "fig10") return fig10_table(cfg, workers, seed);
    if (id == "fig11") return fig11_table(cfg, seed);
    if (id == "fig12") return fig12_table(cfg, seed);
    if (id == "fig13") return fig13_table(cfg, seed);
    if (id == "acceptance") return acceptance_table(cfg, workers, log);
    std::string msg = "unknown experiment '" + id + "'; registered:";
    for (const auto& e : experiment_registry()) msg += " " + e.id;
    throw std::invalid_argument(msg);
}

} // namespace coopcell
