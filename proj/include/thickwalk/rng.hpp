// rng.hpp — seedable RNG with portable distributions.
//
// Identity (recorded in output manifests): mt19937_64 engine; uniform
// doubles from the top 53 bits; normals via the Marsaglia polar method;
// unbiased bounded integers by rejection; per-chain streams derived with
// splitmix64. Given (seed, version), the draw sequence is reproducible
// across platforms.
#pragma once

#include <cstdint>
#include <random>

#include "thickwalk/vec3.hpp"

namespace thickwalk {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives an independent stream seed for a (chain, cell, ...) index.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Uniform on {0, ..., bound-1}, unbiased (rejection).
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
        std::uint64_t v;
        do { v = engine_(); } while (v >= limit);
        return v % bound;
    }

    /// Standard normal, Marsaglia polar method (second value cached).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    /// Uniform direction on the unit sphere (normalized gaussian triple).
    Vec3 unit_vector() {
        Vec3 v;
        do {
            v = Vec3{gaussian(), gaussian(), gaussian()};
        } while (v.norm_sq() < 1e-24);
        return v.normalized();
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace thickwalk
