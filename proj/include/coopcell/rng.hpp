#pragma once
// Seedable xoshiro256++ stream with the sampling transforms used across the
// library. Hand-rolled so that draws are bit-stable across platforms and
// worker layouts.
#include <cmath>
#include <cstdint>

namespace coopcell {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
} // namespace detail

class Rng {
  public:
    explicit Rng(std::uint64_t seed = 1) {
        std::uint64_t x = seed;
        for (auto& w : s_) w = detail::splitmix64(x);
    }
    // Independent stream derived from (seed, stream); used for per-trial seeding.
    static Rng child(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t x = seed;
        std::uint64_t a = detail::splitmix64(x);
        x = a ^ (stream * 0xD6E8FEB86659FD93ull + 0x2545F4914F6CDD1Dull);
        return Rng(detail::splitmix64(x));
    }

    std::uint64_t next() {
        std::uint64_t r = detail::rotl(s_[0] + s_[3], 23) + s_[0];
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl(s_[3], 45);
        return r;
    }

    double uniform() { return (next() >> 11) * 0x1.0p-53; } // [0,1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double expo() { return -std::log1p(-uniform()); } // unit-mean exponential

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    // Marsaglia-Tsang; k < 1 handled by the boost gamma(k+1)*U^(1/k).
    double gamma(double k, double theta = 1.0) {
        if (k < 1.0) {
            double u = uniform();
            while (u <= 0.0) u = uniform();
            return gamma(k + 1.0, theta) * std::pow(u, 1.0 / k);
        }
        const double d = k - 1.0 / 3.0, c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * theta;
            if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
                return d * v * theta;
        }
    }

    // Exact via infinite divisibility: split large means, then product method.
    long poisson(double mean) {
        long n = 0;
        while (mean > 30.0) {
            double half = 0.5 * mean;
            n += poisson_small(half);
            mean -= half;
        }
        return n + poisson_small(mean);
    }

    double rayleigh(double lambda) { // nearest-point distance law for intensity lambda
        return std::sqrt(expo() / (3.14159265358979323846 * lambda));
    }

  private:
    long poisson_small(double mean) {
        if (mean <= 0.0) return 0;
        const double limit = std::exp(-mean);
        long k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace coopcell
