#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pwflow/vec.hpp"

namespace pwflow {

/// splitmix64: tiny, portable, deterministic across platforms. Used for all
/// sample generation so reports are reproducible bit-for-bit from a seed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

private:
    std::uint64_t state_;
};

/// Space-time sample box; defaults cover one period of unit-wavelength
/// trigonometric fields.
struct SampleBox {
    Vec lo, hi;          // spatial box
    double t_min = 0.0;
    double t_max = 1.0;

    static SampleBox standard(std::size_t n, double half_width = 3.14159265358979323846) {
        SampleBox b;
        b.lo = Vec(n);
        b.hi = Vec(n);
        for (std::size_t i = 0; i < n; ++i) {
            b.lo[i] = -half_width;
            b.hi[i] = half_width;
        }
        return b;
    }
};

/// All samples are generated upfront from the seed in one sequential pass;
/// workers only consume them, which keeps reductions bit-identical for any
/// worker count.
inline std::vector<std::pair<double, Vec>> sample_points(const SampleBox& box, std::size_t count,
                                                         std::uint64_t seed) {
    SplitMix64 rng(seed);
    const std::size_t n = box.lo.size();
    std::vector<std::pair<double, Vec>> pts;
    pts.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        const double t = rng.uniform(box.t_min, box.t_max);
        Vec x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = rng.uniform(box.lo[i], box.hi[i]);
        pts.emplace_back(t, std::move(x));
    }
    return pts;
}

} // namespace pwflow
