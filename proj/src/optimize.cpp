#include "reliab/optimize.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace reliab::optimize {

namespace {

double finite_or_inf(double v) {
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

}  // namespace

std::vector<double> Box::clamp(std::vector<double> x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
    return x;
}

std::vector<bool> Box::at_bound(const std::vector<double>& x, double slack) const {
    std::vector<bool> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = x[i] <= lower[i] + slack || x[i] >= upper[i] - slack;
    }
    return out;
}

Minimum nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                    std::vector<double> start, const Box& box,
                    const NelderMeadOptions& options) {
    const std::size_t dim = start.size();
    std::size_t evaluations = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evaluations;
        return finite_or_inf(f(x));
    };

    std::vector<std::vector<double>> simplex(dim + 1, box.clamp(std::move(start)));
    for (std::size_t i = 0; i < dim; ++i) {
        auto& v = simplex[i + 1];
        const double step = v[i] + options.initial_step <= box.upper[i] ? options.initial_step
                                                                         : -options.initial_step;
        v[i] += step;
        v = box.clamp(v);
    }
    std::vector<double> values(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

    std::vector<std::size_t> order(dim + 1);
    bool converged = false;
    auto point = [&](const std::vector<double>& centroid, const std::vector<double>& worst,
                     double t) {
        std::vector<double> x(dim);
        for (std::size_t j = 0; j < dim; ++j) x[j] = centroid[j] + t * (worst[j] - centroid[j]);
        return box.clamp(std::move(x));
    };

    while (evaluations < options.max_evaluations) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[dim - 1];

        double diameter = 0.0;
        for (std::size_t i = 0; i <= dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                diameter = std::max(diameter, std::abs(simplex[i][j] - simplex[best][j]));
            }
        }
        const double spread = values[worst] - values[best];
        if (std::isfinite(spread) && spread <= options.f_tolerance * (1.0 + std::abs(values[best])) &&
            diameter <= options.x_tolerance * 1e3) {
            converged = true;
            break;
        }
        if (diameter <= options.x_tolerance) {
            converged = std::isfinite(values[best]);
            break;
        }

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j] / static_cast<double>(dim);
        }

        const auto reflected = point(centroid, simplex[worst], -1.0);
        const double f_reflected = eval(reflected);
        if (f_reflected < values[best]) {
            const auto expanded = point(centroid, simplex[worst], -2.0);
            const double f_expanded = eval(expanded);
            if (f_expanded < f_reflected) {
                simplex[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < values[second]) {
            simplex[worst] = reflected;
            values[worst] = f_reflected;
            continue;
        }
        const bool outside = f_reflected < values[worst];
        const auto contracted = point(centroid, simplex[worst], outside ? -0.5 : 0.5);
        const double f_contracted = eval(contracted);
        if (f_contracted < (outside ? f_reflected : values[worst])) {
            simplex[worst] = contracted;
            values[worst] = f_contracted;
            continue;
        }
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
            }
            values[i] = eval(simplex[i]);
        }
    }

    const auto best = static_cast<std::size_t>(
        std::min_element(values.begin(), values.end()) - values.begin());
    return Minimum{simplex[best], values[best], evaluations, converged};
}

Minimum scan_then_brent(const std::function<double(double)>& f, double lo, double hi,
                        std::size_t grid) {
    grid = std::max<std::size_t>(grid, 3);
    const double step = (hi - lo) / static_cast<double>(grid - 1);
    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid; ++i) {
        const double v = finite_or_inf(f(lo + step * static_cast<double>(i)));
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    if (!std::isfinite(best_value)) return Minimum{{lo}, best_value, grid, false};

    const double a = lo + step * static_cast<double>(best == 0 ? 0 : best - 1);
    const double b = lo + step * static_cast<double>(std::min(best + 1, grid - 1));
    std::uintmax_t iterations = 200;
    constexpr int bits = std::numeric_limits<double>::digits / 2;
    const auto [x, value] = boost::math::tools::brent_find_minima(
        [&](double t) { return finite_or_inf(f(t)); }, a, b, bits, iterations);
    if (value <= best_value) return Minimum{{x}, value, grid + iterations, true};
    return Minimum{{lo + step * static_cast<double>(best)}, best_value, grid + iterations, true};
}

}  // namespace reliab::optimize
