#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace phifrac {

/// Seeded generator with a fully specified output sequence (mt19937_64 plus
/// explicit bit-to-double conversion), so reports are identical across
/// standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    /// Uniform in {0, ..., n - 1}.
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

private:
    std::mt19937_64 engine_;
};

} // namespace phifrac
