#pragma once
// Point-process sampling, base-station placement and the distance geometry of
// a source/relay/destination triple.
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "coopcell/rng.hpp"

namespace coopcell {

struct Point2D {
    double x = 0.0, y = 0.0;
};

struct Window {
    enum class Kind { disk, annulus, rect } kind = Kind::disk;
    double cx = 0.0, cy = 0.0; // center (disk/annulus)
    double r_in = 0.0, r_out = 0.0;
    double ax = 0.0, ay = 0.0, bx = 0.0, by = 0.0; // rect corners

    static Window disk(double cx, double cy, double r);
    static Window annulus(double cx, double cy, double r_in, double r_out);
    static Window rect(double ax, double ay, double bx, double by);

    double area() const;
    Point2D sample(Rng& rng) const; // uniform point
    Point2D centroid() const;
};

std::vector<Point2D> sample_ppp(double intensity, const Window& window, Rng& rng);

// One BS per user, uniform over the user's Voronoi cell within the window
// (rejection sampling). Throws after retry_budget failed draws for any user.
std::vector<Point2D> place_base_stations(const std::vector<Point2D>& active_users,
                                         const Window& window, Rng& rng,
                                         long retry_budget = 1000000);

// Index of the nearest point to `from`; ties broken by lowest index.
std::size_t nearest_index(const Point2D& from, const std::vector<Point2D>& pts);

// Nearest idle user and its distance; empty set -> no candidate relay.
std::optional<std::pair<Point2D, double>> nearest_idle(const Point2D& source,
                                                       const std::vector<Point2D>& idle_users);

double relay_to_bs_distance(double r1, double r2, double psi0);

enum class DistanceLaw { direct, cooperation };
// Rayleigh nearest-point density from the null probability of the matching PPP.
double distance_pdf(DistanceLaw which, double r, double lambda1, double lambda2);

struct CellScenario {
    double r1 = 0.0;         // source -> BS (m)
    double r2 = 0.0;         // source -> relay (m)
    double psi0 = 0.0;       // angle between BS and relay vectors (rad)
    double d_relay_bs = 0.0; // derived via the law of cosines
};
CellScenario make_scenario(double r1, double r2, double psi0);

// Distance-law samples from a full PPP draw. r1 comes from the cell that
// covers the origin: nearest active user to the origin, BS placed uniformly in
// that user's cell by rejection; the user->BS distance is then exactly
// Rayleigh(lambda1) by the null probability. r2 is the origin's nearest idle
// user distance.
double sample_r1_full(double lambda1, double window_radius, Rng& rng);
double sample_r2_full(double lambda2, double window_radius, Rng& rng);

} // namespace coopcell
