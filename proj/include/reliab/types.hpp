#pragma once

#include <cstdint>

namespace reliab {

// Road-testing evidence: `failures` events observed over `miles` driven.
// Miles are continuous; rounding happens only when results are presented.
struct Observation {
    std::uint64_t failures = 0;
    double miles = 0.0;

    // Throws InvalidArgument unless miles >= 0 and (miles == 0 implies failures == 0).
    void validate() const;

    // failures / miles, with the empty observation mapped to 0.
    double empirical_rate() const noexcept {
        return miles > 0.0 ? static_cast<double>(failures) / miles : 0.0;
    }
};

// "The per-mile failure probability is at most `bound`", held with `confidence`.
struct ReliabilityClaim {
    double bound = 0.0;
    double confidence = 0.0;

    void validate() const;
};

}  // namespace reliab
