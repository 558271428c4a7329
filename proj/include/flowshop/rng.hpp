#ifndef FLOWSHOP_RNG_HPP
#define FLOWSHOP_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

// Sampling helpers on top of std::mt19937_64. The standard distribution
// objects are implementation-defined and carry hidden state (normal keeps a
// spare value), which breaks checkpoint/resume reconstruction of streams, so
// the few draws we need are spelled out here.
namespace flowshop::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Derives a stream seed from a master seed plus context tags (epoch, step, ...).
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t s = 0x51F15AFE1EA5EDull;
    for (std::uint64_t p : parts) s = splitmix64(s ^ splitmix64(p));
    return s;
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * uniform01(g);
}

// Uniform integer in [lo, hi], rejection sampled so every value is equally likely.
inline std::int64_t uniform_int(std::mt19937_64& g, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() / range * range;
    std::uint64_t x;
    do {
        x = g();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % range);
}

// One standard normal draw via Box-Muller. Uses two uniforms per draw and
// keeps no cached state, so streams are position-independent.
inline double standard_normal(std::mt19937_64& g) {
    const double u1 = 1.0 - uniform01(g); // (0, 1]
    const double u2 = uniform01(g);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

inline double normal(std::mt19937_64& g, double mean, double sd) {
    return mean + sd * standard_normal(g);
}

// Normal truncated to (lower, inf), by resampling.
inline double truncated_normal(std::mt19937_64& g, double mean, double sd, double lower) {
    double x;
    do {
        x = normal(g, mean, sd);
    } while (x <= lower);
    return x;
}

} // namespace flowshop::rng

#endif
