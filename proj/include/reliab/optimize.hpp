#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace reliab::optimize {

struct Box {
    std::vector<double> lower;
    std::vector<double> upper;

    std::vector<double> clamp(std::vector<double> x) const;
    // Coordinates within `slack` of a bound.
    std::vector<bool> at_bound(const std::vector<double>& x, double slack) const;
};

struct NelderMeadOptions {
    std::size_t max_evaluations = 4000;
    double initial_step = 0.5;
    double f_tolerance = 1e-10;  // spread of simplex values
    double x_tolerance = 1e-8;   // simplex diameter
};

struct Minimum {
    std::vector<double> x;
    double value = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

// Minimises f over the box. Trial points are projected onto the box, so the
// objective is never evaluated outside it. Non-finite values count as +inf.
Minimum nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                    std::vector<double> start, const Box& box,
                    const NelderMeadOptions& options = {});

// One-dimensional minimum on [lo, hi]: scan `grid` equally spaced points,
// then refine the best bracket with Brent's method.
Minimum scan_then_brent(const std::function<double(double)>& f, double lo, double hi,
                        std::size_t grid = 48);

}  // namespace reliab::optimize
