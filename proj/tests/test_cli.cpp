#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "coopcell/config.hpp"
#include "coopcell/experiments.hpp"
#include "coopcell/policies.hpp"
#include "coopcell/table.hpp"

using namespace coopcell;

namespace {
bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}
} // namespace

TEST_CASE("default configuration derives the operating point") {
    RunConfig cfg = default_config();
    CHECK(cfg.net.lambda1 == doctest::Approx(1.0 / 360000.0).scale(0).epsilon(1e-14));
    CHECK(cfg.net.lambda2 == doctest::Approx(2.0 / 360000.0).scale(0).epsilon(1e-14));
    CHECK(cfg.net.p_s == doctest::Approx(dbm_to_w(23.0)).scale(0).epsilon(1e-14));
    CHECK(cfg.net.p_r == cfg.net.p_s);
    // Mid-cell SNR convention for the noise floor.
    double expect = cfg.net.p_s * std::pow(150.0, -4.0) / std::pow(10.0, 1.5);
    CHECK(cfg.net.noise_power == doctest::Approx(expect).scale(0).epsilon(1e-12));
    // Interferer thinning follows the hybrid policy at the configured ratio.
    CHECK(cfg.net.rho1 == doctest::Approx(0.263707639).scale(0).epsilon(1e-7));
    CHECK(cfg.net.rho1 ==
          doctest::Approx(coop_prob_hybrid(cfg.net.lambda1, cfg.net.lambda2, 4.0)));
}

TEST_CASE("config text parsing") {
    RunConfig cfg = parse_config_text("# heading comment\n"
                                      "lambda2 = 1.1111111111111112e-05\n"
                                      "  p_max_dbm = 26   # inline comment\n"
                                      "\n"
                                      "r2_m = 120\n");
    CHECK(cfg.net.lambda2 == doctest::Approx(4.0 / 360000.0).scale(0).epsilon(1e-9));
    CHECK(cfg.p_max_dbm == 26.0);
    CHECK(cfg.r2_m == 120.0);
    CHECK(cfg.net.p_s == doctest::Approx(dbm_to_w(26.0)).scale(0).epsilon(1e-14));

    // Empty text is the default configuration.
    RunConfig dflt = parse_config_text("");
    CHECK(dflt.resolved() == default_config().resolved());
}

TEST_CASE("config errors are loud and positioned") {
    CHECK_THROWS_AS(parse_config_text("bad_key = 1\n"), config_error);
    CHECK(contains(message_of([] { parse_config_text("\n\nbad_key = 1\n"); }),
                   "line 3"));
    CHECK(contains(message_of([] { parse_config_text("\n\nbad_key = 1\n"); }), "bad_key"));
    CHECK(contains(message_of([] { parse_config_text("alpha\n"); }), "expected key = value"));
    CHECK(contains(message_of([] { parse_config_text("alpha = # gone\n"); }), "empty value"));
    CHECK(contains(message_of([] { parse_config_text("alpha = fast\n"); }), "not a number"));
    CHECK_THROWS_AS(parse_config_text("alpha = 2\n"), config_error);
    CHECK_THROWS_AS(parse_config_text("n_trials = 0\n"), config_error);
    CHECK_THROWS_AS(parse_config_text("rmax_factor = 0.5\n"), config_error);
    CHECK_THROWS_AS(parse_config_text("rho1_mode = sometimes\n"), config_error);
    CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), config_error);
}

TEST_CASE("noise and thinning overrides") {
    RunConfig given = parse_config_text("sigma2_w = 2.5e-12\n");
    CHECK(given.sigma2_given);
    CHECK(given.net.noise_power == doctest::Approx(2.5e-12).scale(0).epsilon(1e-14));

    RunConfig e2 = parse_config_text("rho1_mode = e2\n");
    CHECK(e2.net.rho1 ==
          doctest::Approx(coop_prob_geometric(e2.net.lambda1, e2.net.lambda2)));

    RunConfig fixed = parse_config_text("rho1_mode = fixed:0.31\n");
    CHECK(fixed.net.rho1 == doctest::Approx(0.31));
    CHECK_THROWS_AS(parse_config_text("rho1_mode = fixed:0.9\n"), config_error);
}

TEST_CASE("annulus outer radius") {
    RunConfig cfg = default_config();
    // Default factor keeps the truncated tail below 1e-3 of the mean.
    CHECK(cfg.rmax() == doctest::Approx(300.0 * std::pow(0.001, -0.5)).epsilon(1e-12));
    RunConfig a3 = parse_config_text("alpha = 3\n");
    CHECK(a3.rmax() == doctest::Approx(300.0 * 1000.0));
    RunConfig fixed = parse_config_text("rmax_factor = 5\n");
    CHECK(fixed.rmax() == doctest::Approx(1500.0));
}

TEST_CASE("resolved settings snapshot") {
    auto kv = default_config().resolved();
    CHECK(kv.size() == 20);
    CHECK(kv.front().first == "lambda1");
    auto find = [&](const std::string& k) {
        for (const auto& [key, val] : kv)
            if (key == k) return val;
        return std::string("<missing>");
    };
    CHECK(find("p_s_w") == "0.199526231497");
    CHECK(find("n_trials") == "100000");
    CHECK(find("rho1_mode") == "e3");
    CHECK(find("rmax_factor") != "<missing>");
}

TEST_CASE("csv serialization is rfc-4180 with nine significant digits") {
    Table t;
    t.columns = {"x", "wei,rd", "say\"hi\""};
    t.add_row({1.0, 0.5, 1.93466100e-11});
    CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);

    std::string csv = csv_string(t, {{"a", "1"}, {"note", "two words"}});
    std::string expect = "# a = 1\n"
                         "# note = two words\n"
                         "x,\"wei,rd\",\"say\"\"hi\"\"\"\r\n"
                         "1.00000000e+00,5.00000000e-01,1.93466100e-11\r\n";
    CHECK(csv == expect);
}

TEST_CASE("json serialization round-trips") {
    Table t;
    t.columns = {"a", "b"};
    t.add_row({1.5, 2.5});
    t.add_row({3.0, 4.0});
    std::string js = json_string(t, {{"seed", "7"}});
    CHECK(contains(js, "\"config\""));
    CHECK(contains(js, "\"seed\": \"7\""));
    CHECK(contains(js, "\"columns\""));
    CHECK(contains(js, "\"rows\""));
    CHECK(js.back() == '\n');
}

TEST_CASE("experiment registry") {
    const auto& reg = experiment_registry();
    CHECK(reg.size() >= 11);
    CHECK(std::is_sorted(reg.begin(), reg.end(),
                         [](const auto& a, const auto& b) { return a.id < b.id; }));
    for (const std::string id :
         {"acceptance", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11",
          "fig12", "fig13"}) {
        bool found = false;
        for (const auto& e : reg) found = found || e.id == id;
        CHECK_MESSAGE(found, "missing experiment ", id);
    }
    for (const auto& e : reg) CHECK_FALSE(e.description.empty());
}

TEST_CASE("experiment dispatch") {
    RunConfig cfg = default_config();
    cfg.n_trials = 2000;

    CHECK_THROWS_AS(run_experiment("fig99", cfg), std::invalid_argument);
    CHECK(contains(message_of([&] { run_experiment("fig99", cfg); }), "fig6"));
    CHECK_THROWS_AS(run_experiment("fig4", cfg, 0), std::invalid_argument);

    Table t1 = run_experiment("fig4", cfg);
    CHECK(t1.columns.size() == 4);
    CHECK(t1.columns[0] == "r_m");
    CHECK(t1.rows.size() == 40);
    // Analytic and empirical CDF columns agree loosely even at this size.
    for (const auto& row : t1.rows) CHECK(std::abs(row[1] - row[2]) < 0.05);

    Table t2 = run_experiment("fig4", cfg);
    CHECK(t1.rows == t2.rows);

    Table t6 = run_experiment("fig6", cfg);
    CHECK(t6.columns ==
          std::vector<std::string>{"ratio", "rho2_analytic", "rho3_analytic", "rho_mc",
                                   "stderr"});
    CHECK(t6.rows.size() == 6);
    for (const auto& row : t6.rows) {
        CHECK(std::abs(row[3] - row[2]) < 6.0 * row[4] + 1e-9); // MC near analytic
        CHECK(row[1] < 0.5);
    }
}
