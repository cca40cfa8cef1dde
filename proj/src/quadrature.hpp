#pragma once

// Adaptive Gauss-Kronrod (G7/K15) for vector-valued integrands with an absolute tolerance.
// Boost's driver uses a purely relative criterion, which never terminates early on
// components that integrate to zero; the nodes and weights still come from Boost.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace pulsewalk::detail {

template <class V>
struct RuleResult {
    V kronrod;
    double error;
};

template <class V, class F>
RuleResult<V> gk15(const F& f, double a, double b) {
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using gauss = boost::math::quadrature::gauss<double, 7>;
    const auto& x = kronrod::abscissa();
    const auto& wk = kronrod::weights();
    const auto& wg = gauss::weights();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    V f0 = f(mid);
    V k = f0 * wk[0];
    V g = f0 * wg[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
        V pair = f(mid + half * x[i]) + f(mid - half * x[i]);
        k += pair * wk[i];
        if (i % 2 == 0) g += pair * wg[i / 2];
    }
    k *= half;
    g *= half;
    return {k, (k - g).norm()};
}

template <class V, class F>
V integrate_adaptive(const F& f, double a, double b, double abs_tol, unsigned depth) {
    RuleResult<V> r = gk15<V>(f, a, b);
    if (r.error <= abs_tol || depth == 0) return r.kronrod;
    const double mid = 0.5 * (a + b);
    return integrate_adaptive<V>(f, a, mid, 0.5 * abs_tol, depth - 1) +
           integrate_adaptive<V>(f, mid, b, 0.5 * abs_tol, depth - 1);
}

/// Integrates f over [a, b] to an absolute tolerance (2-norm of the error estimate).
template <class V, class F>
V integrate(const F& f, double a, double b, double abs_tol = 1e-12, unsigned max_depth = 20) {
    if (a == b) return V(f(a) * 0.0);
    return integrate_adaptive<V>(f, a, b, abs_tol, max_depth);
}

}  // namespace pulsewalk::detail
