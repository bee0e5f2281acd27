#include "coopcell/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "coopcell/policies.hpp"

namespace coopcell {

void NetworkConfig::validate() const {
    if (!(lambda1 > 0.0)) throw config_error("lambda1 must be > 0");
    if (lambda2 < 0.0) throw config_error("lambda2 must be >= 0");
    if (!(alpha > 2.0)) throw config_error("alpha must be > 2");
    if (!(cell_radius > 0.0)) throw config_error("cell_radius_m must be > 0");
    if (noise_power < 0.0) throw config_error("sigma2_w must be >= 0");
    if (!(alpha1 > 0.0) || !(alpha1 < 1.0)) throw config_error("alpha1 must lie in (0,1)");
    if (std::abs(alpha1 + alpha2 - 1.0) > 1e-12) throw config_error("alpha1 + alpha2 must be 1");
    if (rho1 < 0.0 || rho1 > 0.5) throw config_error("rho1 must lie in [0, 0.5]");
}

double RunConfig::rmax() const {
    const double f =
        rmax_factor > 0.0 ? rmax_factor : std::pow(0.001, -1.0 / (net.alpha - 2.0));
    return f * net.cell_radius;
}

void finalize(RunConfig& cfg) {
    cfg.net.p_s = dbm_to_w(cfg.p_max_dbm);
    cfg.net.p_r = cfg.net.p_s;
    cfg.net.alpha2 = 1.0 - cfg.net.alpha1;
    cfg.net.validate(); // raw fields first; the derivations below assume them
    if (!cfg.sigma2_given) {
        // Received SNR of a mid-cell user at max power: sigma2 = P (Rc/2)^-a / snr.
        cfg.net.noise_power = cfg.net.p_s *
                              std::pow(0.5 * cfg.net.cell_radius, -cfg.net.alpha) /
                              std::pow(10.0, cfg.snr_db / 10.0);
    }
    if (cfg.rho1_mode == "e3")
        cfg.net.rho1 = coop_prob_hybrid(cfg.net.lambda1, cfg.net.lambda2, cfg.net.alpha);
    else if (cfg.rho1_mode == "e2")
        cfg.net.rho1 = coop_prob_geometric(cfg.net.lambda1, cfg.net.lambda2);
    else if (cfg.rho1_mode.rfind("fixed:", 0) == 0) {
        try {
            cfg.net.rho1 = std::stod(cfg.rho1_mode.substr(6));
        } catch (const std::exception&) {
            throw config_error("rho1_mode fixed:<value> needs a number, got '" + cfg.rho1_mode +
                               "'");
        }
    } else
        throw config_error("rho1_mode must be e2, e3 or fixed:<value>, got '" + cfg.rho1_mode +
                           "'");
    cfg.net.validate();
    if (cfg.m1_split < 0.0 || cfg.m1_split > 1.0)
        throw config_error("interferer_m1_split must lie in [0,1]");
    if (cfg.n_trials < 1) throw config_error("n_trials must be >= 1");
    if (cfg.rmax_factor < 0.0 || (cfg.rmax_factor > 0.0 && cfg.rmax_factor <= 1.0))
        throw config_error("rmax_factor must be > 1 (or 0 for the default)");
}

RunConfig default_config() {
    RunConfig cfg;
    finalize(cfg);
    return cfg;
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double num(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw config_error("key '" + key + "': not a number: '" + v + "'");
    }
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    static const std::set<std::string> known = {
        "lambda1",     "lambda2",   "alpha",    "cell_radius_m",
        "p_max_dbm",   "sigma2_w",  "snr_db",   "alpha1",
        "rho1_mode",   "rmax_factor", "n_trials", "seed",
        "interferer_m1_split", "r1_m", "r2_m", "psi0_rad", "d_relay_frac"};
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!known.count(key))
            throw config_error("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (val.empty())
            throw config_error("line " + std::to_string(lineno) + ": empty value for '" + key + "'");
        if (key == "lambda1") cfg.net.lambda1 = num(key, val);
        else if (key == "lambda2") cfg.net.lambda2 = num(key, val);
        else if (key == "alpha") cfg.net.alpha = num(key, val);
        else if (key == "cell_radius_m") cfg.net.cell_radius = num(key, val);
        else if (key == "p_max_dbm") cfg.p_max_dbm = num(key, val);
        else if (key == "sigma2_w") { cfg.net.noise_power = num(key, val); cfg.sigma2_given = true; }
        else if (key == "snr_db") cfg.snr_db = num(key, val);
        else if (key == "alpha1") cfg.net.alpha1 = num(key, val);
        else if (key == "rho1_mode") cfg.rho1_mode = val;
        else if (key == "rmax_factor") cfg.rmax_factor = num(key, val);
        else if (key == "n_trials") cfg.n_trials = long(num(key, val));
        else if (key == "seed") cfg.seed = std::uint64_t(num(key, val));
        else if (key == "interferer_m1_split") cfg.m1_split = num(key, val);
        else if (key == "r1_m") cfg.r1_m = num(key, val);
        else if (key == "r2_m") cfg.r2_m = num(key, val);
        else if (key == "psi0_rad") cfg.psi0_rad = num(key, val);
        else if (key == "d_relay_frac") cfg.d_relay_frac = num(key, val);
    }
    finalize(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

namespace {
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}
} // namespace

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
    return {
        {"lambda1", fmt(net.lambda1)},
        {"lambda2", fmt(net.lambda2)},
        {"alpha", fmt(net.alpha)},
        {"cell_radius_m", fmt(net.cell_radius)},
        {"p_max_dbm", fmt(p_max_dbm)},
        {"p_s_w", fmt(net.p_s)},
        {"p_r_w", fmt(net.p_r)},
        {"snr_db", fmt(snr_db)},
        {"sigma2_w", fmt(net.noise_power)},
        {"alpha1", fmt(net.alpha1)},
        {"rho1_mode", rho1_mode},
        {"rho1", fmt(net.rho1)},
        {"rmax_factor", fmt(rmax() / net.cell_radius)},
        {"interferer_m1_split", fmt(m1_split)},
        {"n_trials", std::to_string(n_trials)},
        {"seed", std::to_string(seed)},
        {"r1_m", fmt(r1_m)},
        {"r2_m", fmt(r2_m)},
        {"psi0_rad", fmt(psi0_rad)},
        {"d_relay_frac", fmt(d_relay_frac)},
    };
}

} // namespace coopcell
