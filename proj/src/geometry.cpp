#include "coopcell/geometry.hpp"

#include <cmath>
#include <limits>

namespace coopcell {

namespace {
constexpr double kPi = 3.14159265358979323846;

double dist2(const Point2D& a, const Point2D& b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}
} // namespace

Window Window::disk(double cx, double cy, double r) {
    Window w;
    w.kind = Kind::disk;
    w.cx = cx;
    w.cy = cy;
    w.r_out = r;
    return w;
}

Window Window::annulus(double cx, double cy, double r_in, double r_out) {
    Window w;
    w.kind = Kind::annulus;
    w.cx = cx;
    w.cy = cy;
    w.r_in = r_in;
    w.r_out = r_out;
    return w;
}

Window Window::rect(double ax, double ay, double bx, double by) {
    Window w;
    w.kind = Kind::rect;
    w.ax = ax;
    w.ay = ay;
    w.bx = bx;
    w.by = by;
    return w;
}

double Window::area() const {
    switch (kind) {
    case Kind::disk: return kPi * r_out * r_out;
    case Kind::annulus: return kPi * (r_out * r_out - r_in * r_in);
    case Kind::rect: return (bx - ax) * (by - ay);
    }
    return 0.0;
}

Point2D Window::sample(Rng& rng) const {
    if (kind == Kind::rect)
        return {ax + (bx - ax) * rng.uniform(), ay + (by - ay) * rng.uniform()};
    const double r2lo = r_in * r_in, r2hi = r_out * r_out;
    const double r = std::sqrt(r2lo + rng.uniform() * (r2hi - r2lo));
    const double phi = rng.uniform(0.0, 2.0 * kPi);
    return {cx + r * std::cos(phi), cy + r * std::sin(phi)};
}

Point2D Window::centroid() const {
    if (kind == Kind::rect) return {0.5 * (ax + bx), 0.5 * (ay + by)};
    return {cx, cy};
}

std::vector<Point2D> sample_ppp(double intensity, const Window& window, Rng& rng) {
    if (!std::isfinite(intensity) || intensity < 0.0)
        throw std::invalid_argument("sample_ppp: intensity must be finite and >= 0");
    const double a = window.area();
    if (!(a > 0.0) || !std::isfinite(a))
        throw std::invalid_argument("sample_ppp: window area must be positive and finite");
    const long n = rng.poisson(intensity * a);
    std::vector<Point2D> pts;
    pts.reserve(std::size_t(n));
    for (long i = 0; i < n; ++i) pts.push_back(window.sample(rng));
    return pts;
}

std::size_t nearest_index(const Point2D& from, const std::vector<Point2D>& pts) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = dist2(from, pts[i]);
        if (d < bd) {
            bd = d;
            best = i;
        }
    }
    return best;
}

std::vector<Point2D> place_base_stations(const std::vector<Point2D>& active_users,
                                         const Window& window, Rng& rng, long retry_budget) {
    if (active_users.empty())
        throw std::invalid_argument("place_base_stations: no active users");
    std::vector<Point2D> bs;
    bs.reserve(active_users.size());
    for (std::size_t i = 0; i < active_users.size(); ++i) {
        bool placed = false;
        for (long attempt = 0; attempt < retry_budget; ++attempt) {
            Point2D q = window.sample(rng);
            if (nearest_index(q, active_users) == i) {
                bs.push_back(q);
                placed = true;
                break;
            }
        }
        if (!placed)
            throw std::runtime_error("place_base_stations: retry budget exhausted for user " +
                                     std::to_string(i));
    }
    return bs;
}

std::optional<std::pair<Point2D, double>> nearest_idle(const Point2D& source,
                                                       const std::vector<Point2D>& idle_users) {
    if (idle_users.empty()) return std::nullopt;
    const std::size_t i = nearest_index(source, idle_users);
    return std::make_pair(idle_users[i], std::sqrt(dist2(source, idle_users[i])));
}

double relay_to_bs_distance(double r1, double r2, double psi0) {
    if (r1 < 0.0 || r2 < 0.0)
        throw std::invalid_argument("relay_to_bs_distance: distances must be >= 0");
    const double d2 = r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * std::cos(psi0);
    return std::sqrt(std::max(d2, 0.0));
}

double distance_pdf(DistanceLaw which, double r, double lambda1, double lambda2) {
    const double lam = which == DistanceLaw::direct ? lambda1 : lambda2;
    if (r < 0.0) throw std::invalid_argument("distance_pdf: r must be >= 0");
    if (!(lam > 0.0)) throw std::invalid_argument("distance_pdf: intensity must be > 0");
    return 2.0 * kPi * lam * r * std::exp(-lam * kPi * r * r);
}

CellScenario make_scenario(double r1, double r2, double psi0) {
    if (!(r1 > 0.0) || r2 < 0.0)
        throw std::invalid_argument("make_scenario: need r1 > 0 and r2 >= 0");
    if (psi0 < 0.0 || psi0 >= 2.0 * kPi)
        throw std::invalid_argument("make_scenario: psi0 must lie in [0, 2pi)");
    return {r1, r2, psi0, relay_to_bs_distance(r1, r2, psi0)};
}

double sample_r1_full(double lambda1, double window_radius, Rng& rng) {
    if (!(lambda1 > 0.0)) throw std::invalid_argument("sample_r1_full: lambda1 must be > 0");
    const Window win = Window::disk(0.0, 0.0, window_radius);
    for (;;) {
        const auto users = sample_ppp(lambda1, win, rng);
        if (users.empty()) continue;
        const std::size_t owner = nearest_index({0.0, 0.0}, users);
        for (long attempt = 0; attempt < 1000000; ++attempt) {
            Point2D q = win.sample(rng);
            if (nearest_index(q, users) == owner)
                return std::sqrt(dist2(q, users[owner]));
        }
        throw std::runtime_error("sample_r1_full: BS rejection budget exhausted");
    }
}

double sample_r2_full(double lambda2, double window_radius, Rng& rng) {
    if (!(lambda2 > 0.0)) throw std::invalid_argument("sample_r2_full: lambda2 must be > 0");
    const Window win = Window::disk(0.0, 0.0, window_radius);
    for (;;) {
        const auto idle = sample_ppp(lambda2, win, rng);
        if (auto hit = nearest_idle({0.0, 0.0}, idle)) return hit->second;
    }
}

} // namespace coopcell
