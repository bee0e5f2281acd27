#include "coopcell/policies.hpp"

#include <cmath>
#include <stdexcept>

#include "coopcell/quad.hpp"

namespace coopcell {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Shared integrand of both probabilities: weight of the D <= r1 wedge,
// 2*l2*cos^2(psi) / (pi*(l1 + 4*l2*cos^2(psi))).
double wedge_density(double psi, double l1, double l2) {
    const double c2 = std::cos(psi) * std::cos(psi);
    return 2.0 * l2 * c2 / (kPi * (l1 + 4.0 * l2 * c2));
}
} // namespace

CoopDecision decide_geometric(const CellScenario& sc) {
    return {sc.r2 <= sc.r1 && sc.d_relay_bs <= sc.r1, PolicyKind::geometric};
}

CoopDecision decide_hybrid(const CellScenario& sc, const FadingDraw& fading, double alpha) {
    if (!(fading.g_sd > 0.0) || !(fading.g_sr > 0.0))
        throw std::invalid_argument("decide_hybrid: gains must be positive");
    const bool in_range = sc.d_relay_bs <= sc.r1;
    if (sc.r2 == 0.0) return {in_range, PolicyKind::hybrid};
    const bool link = fading.g_sd * std::pow(sc.r1, -alpha) <= fading.g_sr * std::pow(sc.r2, -alpha);
    return {link && in_range, PolicyKind::hybrid};
}

CoopDecision decide_ideal(double equiv_sr_gain, double equiv_sd_gain) {
    if (equiv_sr_gain < 0.0 || equiv_sd_gain < 0.0)
        throw std::invalid_argument("decide_ideal: gains must be >= 0");
    return {equiv_sr_gain >= equiv_sd_gain, PolicyKind::ideal};
}

double beta_pdf(double z, double alpha) {
    if (z < 0.0 || !(alpha > 0.0)) throw std::invalid_argument("beta_pdf: need z >= 0, alpha > 0");
    if (z == 0.0) return alpha > 1.0 ? 0.0 : (alpha == 1.0 ? 1.0 : HUGE_VAL);
    const double za = std::pow(z, alpha);
    return alpha * std::pow(z, alpha - 1.0) / ((1.0 + za) * (1.0 + za));
}

double beta_cdf(double z, double alpha) {
    if (z < 0.0 || !(alpha > 0.0)) throw std::invalid_argument("beta_cdf: need z >= 0, alpha > 0");
    return 1.0 - 1.0 / (1.0 + std::pow(z, alpha));
}

double coop_prob_geometric(double lambda1, double lambda2) {
    if (!(lambda1 > 0.0) || lambda2 < 0.0)
        throw std::invalid_argument("coop_prob_geometric: need lambda1 > 0, lambda2 >= 0");
    if (lambda2 == 0.0) return 0.0;
    const auto f = [&](double psi) { return wedge_density(psi, lambda1, lambda2); };
    const double tails = integrate(f, -kPi / 2.0, -kPi / 3.0, 1e-9) +
                         integrate(f, kPi / 3.0, kPi / 2.0, 1e-9);
    return tails + lambda2 / (3.0 * (lambda1 + lambda2));
}

double coop_prob_hybrid(double lambda1, double lambda2, double alpha) {
    if (!(lambda1 > 0.0) || lambda2 < 0.0 || !(alpha > 2.0))
        throw std::invalid_argument("coop_prob_hybrid: need lambda1 > 0, lambda2 >= 0, alpha > 2");
    if (lambda2 == 0.0) return 0.0;
    const auto wedge = [&](double psi) { return wedge_density(psi, lambda1, lambda2); };
    // z < 2: wedge part beyond acos(z/2) plus the z-scaled radial part inside it.
    const auto head = [&](double z) {
        const double cut = std::acos(0.5 * z);
        const double wedge_part = 2.0 * integrate(wedge, cut, kPi / 2.0, 1e-11);
        const double radial = z * z * lambda2 / (lambda1 + z * z * lambda2);
        return beta_pdf(z, alpha) * (wedge_part + cut / kPi * radial);
    };
    const double t_head = integrate(head, 0.0, 2.0, 1e-9);
    // z >= 2: the psi integrand no longer depends on z, so the tail separates
    // exactly into tail mass times the full wedge integral.
    const double full = integrate(wedge, -kPi / 2.0, kPi / 2.0, 1e-11);
    const double t_tail = (1.0 - beta_cdf(2.0, alpha)) * full;
    return t_head + t_tail;
}

CoopEstimate coop_prob_mc(PolicyKind policy, double lambda1, double lambda2, double alpha, long n,
                          Rng& rng) {
    if (n < 1) throw std::invalid_argument("coop_prob_mc: need n >= 1");
    if (lambda2 == 0.0) return {0.0, 0.0};
    long hits = 0;
    for (long i = 0; i < n; ++i) {
        const double r1 = rng.rayleigh(lambda1);
        const double r2 = rng.rayleigh(lambda2);
        const double psi0 = rng.uniform(0.0, 2.0 * kPi);
        const double d2 = r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * std::cos(psi0);
        const bool in_range = d2 <= r1 * r1;
        bool coop = false;
        if (policy == PolicyKind::geometric) {
            coop = r2 <= r1 && in_range;
        } else {
            const double g_sd = rng.expo(), g_sr = rng.expo();
            coop = g_sd * std::pow(r1, -alpha) <= g_sr * std::pow(r2, -alpha) && in_range;
        }
        hits += coop;
    }
    const double p = double(hits) / double(n);
    return {p, std::sqrt(p * (1.0 - p) / double(n))};
}

} // namespace coopcell
