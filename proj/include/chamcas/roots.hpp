#pragma once

// Safeguarded bracketed root finding: secant steps accepted only while they
// keep shrinking the bracket, bisection otherwise. The objective is never
// evaluated outside the initial bracket and the iteration is deterministic.

#include <algorithm>
#include <cmath>
#include <string>

#include "chamcas/errors.hpp"

namespace chamcas::numerics {

struct RootSpec {
    double lo = 0.0;
    double hi = 1.0;
    double rel_tol = 1e-12;
    int max_iter = 200;
};

template <class G>
double find_root_bracketed(G&& g, const RootSpec& spec) {
    if (!(spec.lo < spec.hi))
        throw std::invalid_argument("RootSpec: requires lo < hi");
    if (!(spec.rel_tol > 0.0) || spec.max_iter < 1)
        throw std::invalid_argument("RootSpec: bad tolerance or iteration budget");

    double a = spec.lo, b = spec.hi;
    double fa = g(a), fb = g(b);
    if (std::isnan(fa) || std::isnan(fb))
        throw root_error("find_root_bracketed: objective returned NaN at the bracket");
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw root_error("find_root_bracketed: no sign change across bracket");

    const double tol = spec.rel_tol * std::max({std::abs(a), std::abs(b), 1e-30});
    double width_check = b - a; // bracket width two iterations ago
    for (int iter = 0; iter < spec.max_iter; ++iter) {
        const double width = b - a;
        if (width <= tol) return 0.5 * (a + b);

        double x;
        // Secant through the bracket endpoints; fall back to bisection when
        // the step leaves the (slightly shrunk) bracket or progress stalls.
        const double denom = fb - fa;
        const bool stalled = (iter % 2 == 1) && (width > 0.5 * width_check);
        if (iter % 2 == 1) width_check = width;
        if (denom != 0.0 && !stalled) {
            x = b - fb * (b - a) / denom;
            const double guard = 0.01 * width;
            if (!(x > a + guard && x < b - guard)) x = 0.5 * (a + b);
        } else {
            x = 0.5 * (a + b);
        }

        const double fx = g(x);
        if (std::isnan(fx))
            throw root_error("find_root_bracketed: objective returned NaN");
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (fa > 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    throw root_error("find_root_bracketed: max_iter exceeded (bracket [" +
                     std::to_string(a) + ", " + std::to_string(b) + "])");
}

} // namespace chamcas::numerics
