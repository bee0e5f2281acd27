#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "coopcell/geometry.hpp"
#include "coopcell/stats.hpp"

using namespace coopcell;

namespace {
constexpr double kPi = 3.14159265358979323846;

bool inside(const Window& w, const Point2D& p) {
    switch (w.kind) {
    case Window::Kind::disk: {
        double dx = p.x - w.cx, dy = p.y - w.cy;
        return dx * dx + dy * dy <= w.r_out * w.r_out + 1e-9;
    }
    case Window::Kind::annulus: {
        double dx = p.x - w.cx, dy = p.y - w.cy;
        double d2 = dx * dx + dy * dy;
        return d2 >= w.r_in * w.r_in - 1e-9 && d2 <= w.r_out * w.r_out + 1e-9;
    }
    case Window::Kind::rect:
        return p.x >= w.ax - 1e-12 && p.x <= w.bx + 1e-12 && p.y >= w.ay - 1e-12 &&
               p.y <= w.by + 1e-12;
    }
    return false;
}
} // namespace

TEST_CASE("window areas, centroids and containment") {
    Window d = Window::disk(3.0, -1.0, 10.0);
    Window a = Window::annulus(0.0, 0.0, 2.0, 5.0);
    Window r = Window::rect(-1.0, -2.0, 3.0, 4.0);
    CHECK(d.area() == doctest::Approx(kPi * 100.0).epsilon(1e-14));
    CHECK(a.area() == doctest::Approx(kPi * 21.0).epsilon(1e-14));
    CHECK(r.area() == doctest::Approx(24.0).epsilon(1e-14));
    CHECK(d.centroid().x == doctest::Approx(3.0));
    CHECK(d.centroid().y == doctest::Approx(-1.0));
    CHECK(r.centroid().x == doctest::Approx(1.0));
    CHECK(r.centroid().y == doctest::Approx(1.0));

    Rng rng(11);
    for (const Window& w : {d, a, r})
        for (int i = 0; i < 5000; ++i) CHECK(inside(w, w.sample(rng)));
}

TEST_CASE("ppp count statistics") {
    Rng rng(12);
    Window w = Window::disk(0.0, 0.0, 1000.0);
    CHECK(sample_ppp(0.0, w, rng).empty());
    CHECK_THROWS_AS(sample_ppp(-1.0, w, rng), std::invalid_argument);

    const double intensity = 1e-4, mean = intensity * w.area(); // ~314.16
    const int reps = 10000;
    double sum = 0.0;
    for (int i = 0; i < reps; ++i) sum += double(sample_ppp(intensity, w, rng).size());
    double se = std::sqrt(mean / reps);
    CHECK(std::abs(sum / reps - mean) < 3.0 * se);

    // Sparse-regime canary at the network density.
    const double l1 = 1.0 / 360000.0;
    Window big = Window::disk(0.0, 0.0, 3000.0);
    double m2 = l1 * big.area(); // ~78.54
    sum = 0.0;
    for (int i = 0; i < reps; ++i) sum += double(sample_ppp(l1, big, rng).size());
    CHECK(std::abs(sum / reps - m2) < 3.0 * std::sqrt(m2 / reps));
}

TEST_CASE("ppp quadrant counts are uncorrelated") {
    Rng rng(13);
    Window w = Window::rect(-1000.0, -1000.0, 1000.0, 1000.0);
    const int reps = 3000;
    std::vector<double> q1(reps), q3(reps);
    for (int i = 0; i < reps; ++i) {
        int a = 0, b = 0;
        for (const auto& p : sample_ppp(5e-5, w, rng)) {
            if (p.x >= 0 && p.y >= 0) ++a;
            if (p.x < 0 && p.y < 0) ++b;
        }
        q1[i] = a;
        q3[i] = b;
    }
    auto m1 = sample_moments(q1), m3 = sample_moments(q3);
    double cov = 0.0;
    for (int i = 0; i < reps; ++i) cov += (q1[i] - m1.mean) * (q3[i] - m3.mean);
    cov /= reps - 1;
    double corr = cov / std::sqrt(m1.var * m3.var);
    CHECK(std::abs(corr) < 4.0 / std::sqrt(double(reps)));
}

TEST_CASE("base stations are uniform over a one-cell window") {
    Rng rng(14);
    Window w = Window::rect(2.0, 3.0, 6.0, 11.0);
    std::vector<Point2D> user{{4.0, 7.0}};
    const int n = 10000;
    double sx = 0.0, sy = 0.0;
    for (int i = 0; i < n; ++i) {
        auto bs = place_base_stations(user, w, rng);
        REQUIRE(bs.size() == 1);
        CHECK(inside(w, bs[0]));
        sx += bs[0].x;
        sy += bs[0].y;
    }
    // Uniform over the rect: sd_x = width/sqrt(12).
    double se_x = (4.0 / std::sqrt(12.0)) / std::sqrt(double(n));
    double se_y = (8.0 / std::sqrt(12.0)) / std::sqrt(double(n));
    CHECK(std::abs(sx / n - 4.0) < 3.0 * se_x);
    CHECK(std::abs(sy / n - 7.0) < 3.0 * se_y);
}

TEST_CASE("voronoi membership holds for every placement") {
    Rng rng(15);
    std::vector<Point2D> two{{-50.0, 0.0}, {50.0, 0.0}};
    Window w = Window::disk(0.0, 0.0, 200.0);
    for (int rep = 0; rep < 200; ++rep) {
        auto bs = place_base_stations(two, w, rng);
        for (std::size_t i = 0; i < bs.size(); ++i) CHECK(nearest_index(bs[i], two) == i);
    }

    // Random realization at network density.
    Window big = Window::disk(0.0, 0.0, 2000.0);
    auto users = sample_ppp(1.0 / 360000.0, big, rng);
    if (users.size() >= 2) {
        auto bs = place_base_stations(users, big, rng);
        REQUIRE(bs.size() == users.size());
        for (std::size_t i = 0; i < bs.size(); ++i) CHECK(nearest_index(bs[i], users) == i);
    }

    CHECK_THROWS_AS(place_base_stations({}, w, rng), std::invalid_argument);
    // A zero-retry budget cannot place anything.
    CHECK_THROWS_AS(place_base_stations(two, w, rng, 0), std::runtime_error);
}

TEST_CASE("nearest point helpers") {
    std::vector<Point2D> pts{{3.0, 4.0}, {1.0, 0.0}};
    CHECK(nearest_index({0.0, 0.0}, pts) == 1);

    auto hit = nearest_idle({0.0, 0.0}, pts);
    REQUIRE(hit.has_value());
    CHECK(hit->first.x == 1.0);
    CHECK(hit->second == doctest::Approx(1.0));

    // Equidistant candidates resolve to the lowest index.
    std::vector<Point2D> tie{{2.0, 0.0}, {0.0, 2.0}};
    auto t = nearest_idle({0.0, 0.0}, tie);
    REQUIRE(t.has_value());
    CHECK(t->first.x == 2.0);
    CHECK(t->first.y == 0.0);
    CHECK(t->second == doctest::Approx(2.0));

    CHECK_FALSE(nearest_idle({0.0, 0.0}, {}).has_value());
}

TEST_CASE("law of cosines distance") {
    CHECK(relay_to_bs_distance(3.0, 4.0, kPi / 2.0) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(relay_to_bs_distance(7.0, 0.0, 1.234) == doctest::Approx(7.0));
    CHECK(relay_to_bs_distance(260.0, 104.0, kPi / 6.0) ==
          doctest::Approx(177.71141258607327).epsilon(1e-12));
    CHECK_THROWS_AS(relay_to_bs_distance(-1.0, 2.0, 0.0), std::invalid_argument);

    Rng rng(16);
    for (int i = 0; i < 2000; ++i) {
        double r1 = rng.uniform(0.0, 500.0), r2 = rng.uniform(0.0, 500.0);
        double psi = rng.uniform(0.0, 2.0 * kPi);
        double d = relay_to_bs_distance(r1, r2, psi);
        CHECK(d == doctest::Approx(relay_to_bs_distance(r1, r2, -psi)).epsilon(1e-12));
        CHECK(d >= std::abs(r1 - r2) - 1e-9);
        CHECK(d <= r1 + r2 + 1e-9);
    }
}

TEST_CASE("distance density shape") {
    const double l1 = 1.0 / 360000.0, l2 = 3.0 / 360000.0;
    CHECK(distance_pdf(DistanceLaw::direct, 0.0, l1, l2) == 0.0);
    CHECK_THROWS_AS(distance_pdf(DistanceLaw::direct, -1.0, l1, l2), std::invalid_argument);
    CHECK_THROWS_AS(distance_pdf(DistanceLaw::direct, 1.0, 0.0, l2), std::invalid_argument);

    // Law selection: the cooperation law carries lambda2.
    CHECK(distance_pdf(DistanceLaw::cooperation, 100.0, l1, l2) ==
          doctest::Approx(2.0 * kPi * l2 * 100.0 * std::exp(-l2 * kPi * 1e4)).epsilon(1e-14));

    // Normalization by quadrature (substitute u = r/scale to a finite box).
    double scale = 1.0 / std::sqrt(l1);
    double mass = 0.0;
    const int steps = 400000;
    double h = 6.0 * scale / steps;
    for (int i = 0; i < steps; ++i) {
        double r = (i + 0.5) * h;
        mass += distance_pdf(DistanceLaw::direct, r, l1, l2) * h;
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));

    // Mode at 1/sqrt(2 pi lambda).
    double mode = 1.0 / std::sqrt(2.0 * kPi * l1);
    double at = distance_pdf(DistanceLaw::direct, mode, l1, l2);
    CHECK(at > distance_pdf(DistanceLaw::direct, mode * 1.01, l1, l2));
    CHECK(at > distance_pdf(DistanceLaw::direct, mode * 0.99, l1, l2));
}

TEST_CASE("scenario construction") {
    CellScenario sc = make_scenario(260.0, 104.0, kPi / 6.0);
    CHECK(sc.d_relay_bs == doctest::Approx(177.71141258607327));
    CHECK(sc.r1 == 260.0);
    CHECK_THROWS_AS(make_scenario(0.0, 10.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_scenario(10.0, -1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_scenario(10.0, 1.0, 7.0), std::invalid_argument);
}

TEST_CASE("full-ppp distance draws follow the rayleigh laws") {
    const double l1 = 1.0 / 360000.0, l2 = 2.0 / 360000.0;
    Rng rng(17);
    const int n = 20000;

    std::vector<double> r1(n), r2(n);
    double w1 = 5.3 / std::sqrt(kPi * l1), w2 = 5.3 / std::sqrt(kPi * l2);
    for (auto& x : r1) x = sample_r1_full(l1, w1, rng);
    for (auto& x : r2) x = sample_r2_full(l2, w2, rng);

    double ks1 = ks_statistic(r1, [&](double r) { return 1.0 - std::exp(-l1 * kPi * r * r); });
    double ks2 = ks_statistic(r2, [&](double r) { return 1.0 - std::exp(-l2 * kPi * r * r); });
    CHECK(ks1 < 0.015);
    CHECK(ks2 < 0.015);
}
