#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mvpose {

// Seeded PRNG with hand-rolled sampling on top of mt19937_64. The standard
// distributions are implementation-defined, so serialized outputs would not
// be reproducible across toolchains; these samplers are fully specified.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // [0, 1) with 53 bits of mantissa.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + uniform01() * (b - a); }

    // Inclusive [lo, hi], exact-uniform via bitmask rejection.
    int uniform_int(int lo, int hi) {
        if (hi <= lo) return lo;
        const uint64_t range = static_cast<uint64_t>(hi - lo);
        uint64_t mask = ~uint64_t{0};
        mask >>= __builtin_clzll(range | 1);
        uint64_t draw;
        do {
            draw = engine_() & mask;
        } while (draw > range);
        return lo + static_cast<int>(draw);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Box-Muller, one draw per call (sine branch discarded).
    double gaussian(double mean = 0.0, double stddev = 1.0) {
        double u1 = uniform01();
        if (u1 < 1e-300) u1 = 1e-300;
        const double u2 = uniform01();
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
        return mean + z * stddev;
    }

private:
    static constexpr double kPi = 3.14159265358979323846;
    std::mt19937_64 engine_;
};

}  // namespace mvpose
