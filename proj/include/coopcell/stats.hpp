#pragma once
// Gamma distribution functions and Kolmogorov-Smirnov statistics.
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace coopcell {

// Regularized lower incomplete gamma P(k, x): series for x < k+1, Lentz
// continued fraction otherwise.
inline double gammap(double k, double x) {
    if (k <= 0.0 || x < 0.0) throw std::invalid_argument("gammap: need k > 0, x >= 0");
    if (x == 0.0) return 0.0;
    const double lg = std::lgamma(k);
    if (x < k + 1.0) {
        double ap = k, sum = 1.0 / k, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-16)
                return sum * std::exp(-x + k * std::log(x) - lg);
        }
        throw std::runtime_error("gammap: series did not converge");
    }
    double b = x + 1.0 - k, c = 1e308, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -i * (i - k);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16)
            return 1.0 - std::exp(-x + k * std::log(x) - lg) * h;
    }
    throw std::runtime_error("gammap: continued fraction did not converge");
}

struct GammaParams {
    double k;     // shape
    double theta; // scale (W)
};

inline double gamma_pdf(double q, const GammaParams& p) {
    if (p.k <= 0.0 || p.theta <= 0.0) throw std::invalid_argument("gamma_pdf: bad params");
    if (q < 0.0) return 0.0;
    if (q == 0.0) return p.k > 1.0 ? 0.0 : (p.k == 1.0 ? 1.0 / p.theta : HUGE_VAL);
    return std::exp((p.k - 1.0) * std::log(q) - q / p.theta - p.k * std::log(p.theta) -
                    std::lgamma(p.k));
}

inline double gamma_cdf(double q, const GammaParams& p) {
    if (p.k <= 0.0 || p.theta <= 0.0) throw std::invalid_argument("gamma_cdf: bad params");
    return q <= 0.0 ? 0.0 : gammap(p.k, q / p.theta);
}

// KS distance of samples against a model CDF. Samples need not be sorted.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = double(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f = cdf(samples[i]);
        d = std::max(d, std::max((i + 1) / n - f, f - i / n));
    }
    return d;
}

// Two-sample KS distance.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        // Step past every copy of the current value on both sides before
        // measuring, so ties do not inflate the distance.
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
    }
    return d;
}

struct MeanVar {
    double mean, var; // unbiased variance
};

inline MeanVar sample_moments(const std::vector<double>& x) {
    if (x.size() < 2) throw std::invalid_argument("sample_moments: need >= 2 samples");
    double m = 0.0;
    for (double v : x) m += v;
    m /= double(x.size());
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return {m, s / double(x.size() - 1)};
}

} // namespace coopcell
