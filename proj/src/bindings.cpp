#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "coopcell/acceptance.hpp"
#include "coopcell/experiments.hpp"
#include "coopcell/montecarlo.hpp"

namespace py = pybind11;
using namespace coopcell;

namespace {

PolicyKind policy_from(const std::string& s) {
    if (s == "ideal") return PolicyKind::ideal;
    if (s == "geometric") return PolicyKind::geometric;
    if (s == "hybrid") return PolicyKind::hybrid;
    throw std::invalid_argument("policy must be ideal, geometric or hybrid, got '" + s + "'");
}

RunConfig config_from(const std::string& text) {
    return text.empty() ? default_config() : parse_config_text(text);
}

py::dict table_to_dict(const Table& t) {
    py::dict d;
    d["columns"] = t.columns;
    d["rows"] = t.rows;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "uplink user-assisted relaying: analytic models and Monte Carlo";

    m.def("relay_to_bs_distance", &relay_to_bs_distance, py::arg("r1"), py::arg("r2"),
          py::arg("psi0"));
    m.def("beta_pdf", &beta_pdf, py::arg("z"), py::arg("alpha"));
    m.def("beta_cdf", &beta_cdf, py::arg("z"), py::arg("alpha"));
    m.def("coop_prob_geometric", &coop_prob_geometric, py::arg("lambda1"), py::arg("lambda2"));
    m.def("coop_prob_hybrid", &coop_prob_hybrid, py::arg("lambda1"), py::arg("lambda2"),
          py::arg("alpha"));
    m.def(
        "coop_prob_mc",
        [](const std::string& policy, double l1, double l2, double alpha, long n,
           std::uint64_t seed) {
            Rng rng(seed);
            const CoopEstimate e = coop_prob_mc(policy_from(policy), l1, l2, alpha, n, rng);
            return py::make_tuple(e.estimate, e.stderr_);
        },
        py::arg("policy"), py::arg("lambda1"), py::arg("lambda2"), py::arg("alpha"),
        py::arg("n"), py::arg("seed") = 1);
    m.def(
        "estimate_coop_prob",
        [](const std::string& policy, const std::string& config_text, long n,
           std::uint64_t seed) {
            const CoopEstimate e =
                estimate_coop_prob(policy_from(policy), config_from(config_text), n, seed);
            return py::make_tuple(e.estimate, e.stderr_);
        },
        py::arg("policy"), py::arg("config_text") = "", py::arg("n") = 10000,
        py::arg("seed") = 1);

    m.def(
        "zeta_coefficients",
        [](double rho1, double p_s, double p_r, double alpha1, double t) {
            const ZetaCoefficients z =
                zeta_coefficients(rho1, make_profile(p_s, p_r, alpha1, t));
            return py::make_tuple(z.zeta1, z.zeta2, z.zeta3, z.zeta4);
        },
        py::arg("rho1"), py::arg("p_s"), py::arg("p_r"), py::arg("alpha1") = 0.5,
        py::arg("t") = 0.0);
    m.def(
        "moments_destination",
        [](int phase, const std::string& config_text) {
            const RunConfig c = config_from(config_text);
            const ZetaCoefficients z = zeta_coefficients(
                c.net.rho1, make_profile(c.net.p_s, c.net.p_r, c.net.alpha1, c.m1_split));
            const InterferenceMoments mm = moments_destination(phase, c.net.field(), z);
            return py::make_tuple(mm.mean, mm.variance);
        },
        py::arg("phase"), py::arg("config_text") = "");
    m.def(
        "moments_relay",
        [](double d_relay_bs, const std::string& config_text) {
            const RunConfig c = config_from(config_text);
            const ZetaCoefficients z = zeta_coefficients(
                c.net.rho1, make_profile(c.net.p_s, c.net.p_r, c.net.alpha1, c.m1_split));
            const InterferenceMoments mm = moments_relay(c.net.field(), z, d_relay_bs);
            return py::make_tuple(mm.mean, mm.variance);
        },
        py::arg("d_relay_bs"), py::arg("config_text") = "");
    m.def(
        "laplace_destination",
        [](int phase, double s, const std::string& config_text) {
            const RunConfig c = config_from(config_text);
            return laplace_destination(
                phase, s, c.net.field(),
                make_profile(c.net.p_s, c.net.p_r, c.net.alpha1, c.m1_split), c.net.rho1);
        },
        py::arg("phase"), py::arg("s"), py::arg("config_text") = "");
    m.def(
        "laplace_relay",
        [](double s, double d_relay_bs, const std::string& config_text) {
            const RunConfig c = config_from(config_text);
            return laplace_relay(s, c.net.field(),
                                 make_profile(c.net.p_s, c.net.p_r, c.net.alpha1, c.m1_split),
                                 c.net.rho1, d_relay_bs);
        },
        py::arg("s"), py::arg("d_relay_bs"), py::arg("config_text") = "");
    m.def(
        "gamma_fit",
        [](double mean, double variance) {
            const GammaParams g = gamma_fit({mean, variance, InterferenceTerm::dest_phase1});
            return py::make_tuple(g.k, g.theta);
        },
        py::arg("mean"), py::arg("variance"));
    m.def("dbm_to_w", &dbm_to_w, py::arg("dbm"));

    py::class_<EquivalentChannels>(m, "EquivalentChannels")
        .def(py::init([](double h_sr, double h_sd_b, double h_sd_m, double h_rd) {
                 EquivalentChannels ch;
                 ch.h_sr_eq = h_sr;
                 ch.h_sd_b_eq = h_sd_b;
                 ch.h_sd_m_eq = h_sd_m;
                 ch.h_rd_eq = h_rd;
                 return ch;
             }),
             py::arg("h_sr_eq"), py::arg("h_sd_b_eq"), py::arg("h_sd_m_eq"), py::arg("h_rd_eq"))
        .def_readwrite("h_sr_eq", &EquivalentChannels::h_sr_eq)
        .def_readwrite("h_sd_b_eq", &EquivalentChannels::h_sd_b_eq)
        .def_readwrite("h_sd_m_eq", &EquivalentChannels::h_sd_m_eq)
        .def_readwrite("h_rd_eq", &EquivalentChannels::h_rd_eq);
    m.def("equivalent_channels", &equivalent_channels, py::arg("raw_sr"), py::arg("raw_sd"),
          py::arg("raw_rd"), py::arg("q_r"), py::arg("q_d_b"), py::arg("q_d_m"),
          py::arg("sigma2"));
    m.def(
        "pdf_rate",
        [](const EquivalentChannels& ch, double p_s, double p_r, double alpha1, double t) {
            const RateResult r = pdf_rate(ch, make_profile(p_s, p_r, alpha1, t));
            return py::make_tuple(r.rate, r.c1, r.c2, r.c3);
        },
        py::arg("channels"), py::arg("p_s"), py::arg("p_r"), py::arg("alpha1"), py::arg("t"));
    m.def(
        "direct_rate",
        [](const EquivalentChannels& ch, double p_s, double alpha1) {
            return direct_rate(ch, p_s, alpha1).rate;
        },
        py::arg("channels"), py::arg("p_s"), py::arg("alpha1"));
    m.def(
        "optimize_power_split",
        [](const EquivalentChannels& ch, double p_s, double p_r, double alpha1) {
            const PowerSplit s = optimize_power_split(ch, p_s, p_r, alpha1);
            return py::make_tuple(s.t, s.result.rate);
        },
        py::arg("channels"), py::arg("p_s"), py::arg("p_r"), py::arg("alpha1"));
    m.def(
        "average_rate",
        [](const std::string& policy, double r1, double r2, double psi0, bool ideal_pos, long n,
           std::uint64_t seed, const std::string& config_text) {
            const RunConfig c = config_from(config_text);
            const InterferenceModel model = build_interference_model(c.net);
            Rng rng(seed);
            const RateAverage ra = average_rate(policy_from(policy), c.net, model,
                                                {r1, r2, psi0, ideal_pos}, n, rng);
            py::dict d;
            d["rate_mean"] = ra.rate_mean;
            d["rate_se"] = ra.rate_se;
            d["direct_mean"] = ra.direct_mean;
            d["coop_fraction"] = ra.coop_fraction;
            return d;
        },
        py::arg("policy"), py::arg("r1"), py::arg("r2") = -1.0, py::arg("psi0") = -1.0,
        py::arg("ideal_pos") = false, py::arg("n") = 2000, py::arg("seed") = 1,
        py::arg("config_text") = "");

    m.def("list_experiments", [] {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& e : experiment_registry()) out.emplace_back(e.id, e.description);
        return out;
    });
    m.def(
        "run_experiment",
        [](const std::string& id, const std::string& config_text, long seed, int workers) {
            RunConfig c = config_from(config_text);
            if (seed >= 0) c.seed = std::uint64_t(seed);
            return table_to_dict(run_experiment(id, c, workers, nullptr));
        },
        py::arg("id"), py::arg("config_text") = "", py::arg("seed") = -1,
        py::arg("workers") = 1);
    m.def(
        "run_acceptance",
        [](std::uint64_t seed, int workers) {
            RunConfig c = default_config();
            c.seed = seed;
            std::ostringstream log;
            const auto results = run_acceptance(c, workers, &log);
            py::list rows;
            for (const auto& r : results) {
                py::dict d;
                d["name"] = r.name;
                d["pass"] = r.pass;
                d["expected_fail"] = r.expected_fail;
                d["detail"] = r.detail;
                rows.append(d);
            }
            py::dict out;
            out["results"] = rows;
            out["ok"] = acceptance_ok(results);
            out["log"] = log.str();
            return out;
        },
        py::arg("seed") = 1, py::arg("workers") = 1);
}
