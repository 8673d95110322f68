#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace reliab {

// Seedable generator with portable variate mappings; the standard
// distribution objects are implementation-defined, which would make
// seeded output differ between standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1].
    double uniform_open_left() noexcept { return 1.0 - uniform(); }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    double exponential(double rate = 1.0) noexcept { return -std::log(uniform_open_left()) / rate; }

    // Integer uniform on [0, n).
    std::uint64_t below(std::uint64_t n) noexcept {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace reliab
