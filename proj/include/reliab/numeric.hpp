#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace reliab {

// Stopping rule for one-dimensional solvers: stop once the bracket is no
// wider than max(relative * |x|, absolute).
struct Tolerance {
    double relative = 1e-9;
    double absolute = 1e-12;
};

inline double log1m(double x) noexcept { return std::log1p(-x); }

// x*log(y) with the convention 0*log(0) = 0 and 0*(-inf) = 0.
inline double xlogy(double x, double log_y) noexcept { return x == 0.0 ? 0.0 : x * log_y; }

double log_sum_exp(std::span<const double> values) noexcept;

// sup |F_m(x) - x| between the empirical cdf of `sorted` (ascending values in
// [0, 1]) and the uniform cdf.
double kolmogorov_distance(std::span<const double> sorted) noexcept;

// Logistic 1/(1+e^x) without overflow.
inline double logistic_complement(double x) noexcept {
    if (x > 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

// Smallest x in (lo, hi] where `holds` switches from false to true.
// Requires holds(lo) == false and holds(hi) == true; `holds` must be monotone.
template <class Predicate>
double bisect_threshold(Predicate&& holds, double lo, double hi, const Tolerance& tol,
                        int max_iterations = 2000) {
    for (int i = 0; i < max_iterations; ++i) {
        const double width = hi - lo;
        if (width <= std::max(tol.relative * std::abs(hi), tol.absolute)) break;
        const double mid = lo + 0.5 * width;
        if (mid <= lo || mid >= hi) break;
        if (holds(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

// Root of a continuous function with f(lo) and f(hi) of opposite signs.
template <class Function>
double bisect_root(Function&& f, double lo, double hi, const Tolerance& tol,
                   int max_iterations = 2000) {
    const bool lo_positive = f(lo) > 0.0;
    return bisect_threshold([&](double x) { return (f(x) > 0.0) != lo_positive; }, lo, hi, tol,
                            max_iterations);
}

}  // namespace reliab
