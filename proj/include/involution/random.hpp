#pragma once

#include "involution/observable.hpp"
#include "involution/rational.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace involution {

// Reproducible stream: std::mt19937_64 (its output sequence is fixed by the
// standard) with hand-rolled conversions, since the std distributions are
// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Uniform on [lo, hi], by rejection to avoid modulo bias.
    std::int64_t integer(std::int64_t lo, std::int64_t hi);

private:
    std::mt19937_64 engine_;
};

// Sampling box for interior points: x_i in (0.1, 2), p_i in (-2, 2).
struct SamplingBox {
    double x_lo = 0.1;
    double x_hi = 2.0;
    double p_lo = -2.0;
    double p_hi = 2.0;
};

PhasePoint sample_point(Rng& rng, std::size_t n, const SamplingBox& box = {});

// `count` points drawn in order from a fresh stream seeded with `seed`.
std::vector<PhasePoint> sample_points(std::uint64_t seed, std::size_t n, std::size_t count,
                                      const SamplingBox& box = {});

// Random rational num/den with num in [-max_num, max_num], den in [1, max_den].
Rational random_rational(Rng& rng, std::int64_t max_num, std::int64_t max_den);

// N pairwise distinct random rationals.
std::vector<Rational> random_distinct_rationals(Rng& rng, std::size_t n, std::int64_t max_num,
                                                std::int64_t max_den);

}  // namespace involution
