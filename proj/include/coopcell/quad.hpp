#pragma once
// Adaptive Gauss-Kronrod (7/15) quadrature on finite intervals.
#include <cmath>
#include <cstdio>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace coopcell {

struct quadrature_error : std::runtime_error {
    double achieved;
    quadrature_error(double got, double want)
        : std::runtime_error("quadrature did not converge: error " + std::to_string(got) +
                             " > tolerance " + std::to_string(want)),
          achieved(got) {}
};

namespace detail {

// 15-point Kronrod nodes/weights with embedded 7-point Gauss rule.
inline constexpr double kx[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kw[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double gw[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class F>
void gk15(F&& f, double a, double b, double& integral, double& err) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double ik = 0.0, ig = 0.0;
    for (int i = 0; i < 8; ++i) {
        double fv = (i == 7) ? f(c) : f(c - h * kx[i]) + f(c + h * kx[i]);
        ik += kw[i] * fv;
        if (i % 2 == 1) ig += gw[i / 2] * fv;
    }
    integral = ik * h;
    err = std::abs((ik - ig) * h);
}

} // namespace detail

// Integrates f over [a,b]; converges when the error estimate drops below
// max(abs_tol, rel_tol*|I|). Throws quadrature_error after max_subdiv splits.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-8, double rel_tol = 0.0,
                 int max_subdiv = 10000) {
    if (!(a < b)) {
        if (a == b) return 0.0;
        return -integrate(f, b, a, abs_tol, rel_tol, max_subdiv);
    }
    struct Seg {
        double a, b, val, err;
        bool operator<(const Seg& o) const { return err < o.err; }
    };
    std::priority_queue<Seg> segs;
    double val, err;
    detail::gk15(f, a, b, val, err);
    segs.push({a, b, val, err});
    double total = val, total_err = err;
    for (int it = 0; it < max_subdiv; ++it) {
        double tol = std::max(abs_tol, rel_tol * std::abs(total));
        if (total_err <= tol) return total;
        Seg s = segs.top();
        segs.pop();
        double m = 0.5 * (s.a + s.b);
        double v1, e1, v2, e2;
        detail::gk15(f, s.a, m, v1, e1);
        detail::gk15(f, m, s.b, v2, e2);
        total += v1 + v2 - s.val;
        total_err += e1 + e2 - s.err;
        segs.push({s.a, m, v1, e1});
        segs.push({m, s.b, v2, e2});
    }
    double tol = std::max(abs_tol, rel_tol * std::abs(total));
    if (total_err <= tol) return total;
    throw quadrature_error(total_err, tol);
}

} // namespace coopcell
