#include "reliab/numeric.hpp"

#include "reliab/error.hpp"
#include "reliab/types.hpp"

#include <fmt/format.h>

namespace reliab {

double log_sum_exp(std::span<const double> values) noexcept {
    double peak = -std::numeric_limits<double>::infinity();
    for (double v : values) peak = std::max(peak, v);
    if (!std::isfinite(peak)) return peak;
    double sum = 0.0;
    for (double v : values) sum += std::exp(v - peak);
    return peak + std::log(sum);
}

double kolmogorov_distance(std::span<const double> sorted) noexcept {
    const double m = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double above = static_cast<double>(i + 1) / m - sorted[i];
        const double below = sorted[i] - static_cast<double>(i) / m;
        d = std::max({d, above, below});
    }
    return d;
}

void Observation::validate() const {
    if (!(miles >= 0.0) || !std::isfinite(miles)) {
        fail(ErrorCode::InvalidArgument, fmt::format("miles must be finite and >= 0, got {}", miles));
    }
    if (miles == 0.0 && failures > 0) {
        fail(ErrorCode::InvalidArgument, "failures observed over zero miles");
    }
}

void ReliabilityClaim::validate() const {
    if (!(bound > 0.0 && bound <= 1.0)) {
        fail(ErrorCode::InvalidArgument, fmt::format("claimed bound must lie in (0, 1], got {}", bound));
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        fail(ErrorCode::InvalidArgument,
             fmt::format("confidence must lie in (0, 1), got {}", confidence));
    }
}

}  // namespace reliab
