#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "coopcell/policies.hpp"
#include "coopcell/quad.hpp"

using namespace coopcell;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kL1 = 1.0 / 360000.0;
} // namespace

TEST_CASE("geometric policy decisions") {
    CHECK(decide_geometric(make_scenario(100.0, 40.0, 0.0)).cooperate);
    CHECK_FALSE(decide_geometric(make_scenario(100.0, 120.0, 0.0)).cooperate);
    CHECK_FALSE(decide_geometric(make_scenario(100.0, 120.0, 2.0)).cooperate);
    // D = sqrt(100^2 + 90^2) ~ 134.5 > r1.
    CHECK_FALSE(decide_geometric(make_scenario(100.0, 90.0, kPi / 2.0)).cooperate);
    // Equilateral boundary: r2 = r1 and D = r1; ties cooperate.
    CHECK(decide_geometric(make_scenario(100.0, 100.0, kPi / 3.0)).cooperate);
}

TEST_CASE("hybrid policy decisions") {
    CellScenario in = make_scenario(100.0, 80.0, 0.1);
    // 4*100^-4 = 4e-8 > 1*80^-4 ~ 2.44e-8: relay link loses.
    CHECK_FALSE(decide_hybrid(in, {4.0, 1.0, 1.0}, 4.0).cooperate);
    CHECK(decide_hybrid(in, {1.0, 1.0, 1.0}, 4.0).cooperate);
    // Out-of-range relay loses regardless of fading.
    CellScenario far = make_scenario(100.0, 90.0, kPi / 2.0);
    CHECK_FALSE(decide_hybrid(far, {1e-9, 1e9, 1.0}, 4.0).cooperate);
    // Co-located relay has an infinitely strong link.
    CHECK(decide_hybrid(make_scenario(100.0, 0.0, 0.0), {1e9, 1e-9, 1.0}, 4.0).cooperate);
    CHECK_THROWS_AS(decide_hybrid(in, {0.0, 1.0, 1.0}, 4.0), std::invalid_argument);
}

TEST_CASE("hybrid degenerates to geometric on equal gains and is scale invariant") {
    Rng rng(21);
    for (int i = 0; i < 5000; ++i) {
        double r1 = rng.uniform(1.0, 400.0), r2 = rng.uniform(0.0, 400.0);
        double psi = rng.uniform(0.0, 2.0 * kPi);
        CellScenario sc = make_scenario(r1, r2, psi);
        double g = rng.expo() + 1e-12;
        CHECK(decide_hybrid(sc, {g, g, 1.0}, 4.0).cooperate ==
              decide_geometric(sc).cooperate);

        double g_sd = rng.expo() + 1e-12, g_sr = rng.expo() + 1e-12;
        double c = rng.uniform(0.1, 10.0);
        CellScenario scaled = make_scenario(c * r1, c * r2, psi);
        CHECK(decide_hybrid(sc, {g_sd, g_sr, 1.0}, 3.5).cooperate ==
              decide_hybrid(scaled, {g_sd, g_sr, 1.0}, 3.5).cooperate);
    }
}

TEST_CASE("ideal policy compares equivalent gains") {
    CHECK(decide_ideal(1.0, 1.0).cooperate); // tie favors relaying
    CHECK(decide_ideal(2e-9, 1e-9).cooperate);
    CHECK_FALSE(decide_ideal(1e-9, 2e-9).cooperate);
    CHECK_THROWS_AS(decide_ideal(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("fading-ratio density") {
    CHECK(beta_pdf(1.0, 4.0) == doctest::Approx(1.0).epsilon(1e-14)); // 4/(1+1)^2
    CHECK(beta_cdf(0.0, 3.0) == 0.0);
    for (double a : {2.5, 3.0, 4.0, 6.0}) {
        CHECK(beta_cdf(1.0, a) == doctest::Approx(0.5).epsilon(1e-14));
        // Normalization: total mass out to Z plus the analytic tail 1/(1+Z^a).
        double zmax = 400.0;
        double mass = integrate([&](double z) { return beta_pdf(z, a); }, 0.0, zmax, 1e-10);
        CHECK(mass + 1.0 / (1.0 + std::pow(zmax, a)) == doctest::Approx(1.0).epsilon(1e-8));
        // pdf is the cdf derivative.
        double h = 1e-6;
        double fd = (beta_cdf(1.3 + h, a) - beta_cdf(1.3 - h, a)) / (2.0 * h);
        CHECK(beta_pdf(1.3, a) == doctest::Approx(fd).epsilon(1e-7));
    }
    CHECK_THROWS_AS(beta_pdf(-0.1, 4.0), std::invalid_argument);
}

TEST_CASE("geometric cooperation probability") {
    CHECK(coop_prob_geometric(kL1, 0.0) == 0.0);
    CHECK_THROWS_AS(coop_prob_geometric(0.0, kL1), std::invalid_argument);

    struct Row {
        double ratio, rho;
    };
    const Row rows[] = {{1.0, 0.203545100},  {2.0, 0.277777778}, {4.0, 0.342768507},
                        {6.0, 0.373610514},  {10.0, 0.404742845}, {1000.0, 0.491900057}};
    for (const auto& r : rows)
        CHECK(coop_prob_geometric(kL1, r.ratio * kL1) == doctest::Approx(r.rho).epsilon(5e-8));

    // Ratio 2 has a closed form: 5/18.
    CHECK(coop_prob_geometric(kL1, 2.0 * kL1) == doctest::Approx(5.0 / 18.0).epsilon(1e-8));

    // Depends only on the ratio, never the absolute scale.
    CHECK(coop_prob_geometric(3.0 * kL1, 6.0 * kL1) ==
          doctest::Approx(coop_prob_geometric(kL1, 2.0 * kL1)).epsilon(1e-10));
}

TEST_CASE("hybrid cooperation probability") {
    CHECK(coop_prob_hybrid(kL1, 0.0, 4.0) == 0.0);
    CHECK_THROWS_AS(coop_prob_hybrid(kL1, kL1, 2.0), std::invalid_argument);

    struct Row {
        double ratio, rho;
    };
    const Row a4[] = {{1.0, 0.195588095},  {2.0, 0.263707639}, {4.0, 0.327030603},
                      {6.0, 0.358982413},  {10.0, 0.392737331}, {1000.0, 0.491653056}};
    for (const auto& r : a4)
        CHECK(coop_prob_hybrid(kL1, r.ratio * kL1, 4.0) == doctest::Approx(r.rho).epsilon(2e-7));

    const Row a3[] = {{1.0, 0.191160599}, {2.0, 0.256372016}, {4.0, 0.318158694},
                      {6.0, 0.350102190}};
    for (const auto& r : a3)
        CHECK(coop_prob_hybrid(kL1, r.ratio * kL1, 3.0) == doctest::Approx(r.rho).epsilon(2e-7));

    CHECK(coop_prob_hybrid(5.0 * kL1, 10.0 * kL1, 4.0) ==
          doctest::Approx(coop_prob_hybrid(kL1, 2.0 * kL1, 4.0)).epsilon(1e-9));
}

TEST_CASE("the two policies nearly coincide and stay below one half") {
    double prev2 = 0.0, prev3 = 0.0;
    for (double ratio : {0.5, 1.0, 2.0, 4.0, 6.0, 10.0, 50.0}) {
        double p2 = coop_prob_geometric(kL1, ratio * kL1);
        double p3 = coop_prob_hybrid(kL1, ratio * kL1, 4.0);
        CHECK(std::abs(p2 - p3) < 0.02);
        CHECK(p2 < 0.5);
        CHECK(p3 < 0.5);
        CHECK(p2 >= prev2); // monotone in the density ratio
        CHECK(p3 >= prev3);
        prev2 = p2;
        prev3 = p3;
    }
}

TEST_CASE("monte carlo oracle agrees with the quadratures") {
    Rng rng(22);
    const long n = 200000;
    for (double ratio : {1.0, 4.0}) {
        auto geo = coop_prob_mc(PolicyKind::geometric, kL1, ratio * kL1, 4.0, n, rng);
        double z2 = (geo.estimate - coop_prob_geometric(kL1, ratio * kL1)) / geo.stderr_;
        CHECK(std::abs(z2) < 4.0);

        auto hyb = coop_prob_mc(PolicyKind::hybrid, kL1, ratio * kL1, 4.0, n, rng);
        double z3 = (hyb.estimate - coop_prob_hybrid(kL1, ratio * kL1, 4.0)) / hyb.stderr_;
        CHECK(std::abs(z3) < 4.0);
    }
    CHECK(coop_prob_mc(PolicyKind::geometric, kL1, 0.0, 4.0, 10, rng).estimate == 0.0);
    CHECK_THROWS_AS(coop_prob_mc(PolicyKind::geometric, kL1, kL1, 4.0, 0, rng),
                    std::invalid_argument);
}
