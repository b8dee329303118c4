#include "involution/random.hpp"

#include <algorithm>

namespace involution {

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi)
{
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r = next();
    while (r >= limit) r = next();
    return lo + static_cast<std::int64_t>(r % span);
}

PhasePoint sample_point(Rng& rng, std::size_t n, const SamplingBox& box)
{
    PhasePoint pt(n);
    for (auto& xi : pt.x) xi = rng.uniform(box.x_lo, box.x_hi);
    for (auto& pi : pt.p) pi = rng.uniform(box.p_lo, box.p_hi);
    return pt;
}

std::vector<PhasePoint> sample_points(std::uint64_t seed, std::size_t n, std::size_t count, const SamplingBox& box)
{
    Rng rng(seed);
    std::vector<PhasePoint> pts;
    pts.reserve(count);
    for (std::size_t t = 0; t < count; ++t) pts.push_back(sample_point(rng, n, box));
    return pts;
}

Rational random_rational(Rng& rng, std::int64_t max_num, std::int64_t max_den)
{
    const std::int64_t num = rng.integer(-max_num, max_num);
    const std::int64_t den = rng.integer(1, max_den);
    Rational r(static_cast<long>(num), static_cast<unsigned long>(den));
    r.canonicalize();
    return r;
}

std::vector<Rational> random_distinct_rationals(Rng& rng, std::size_t n, std::int64_t max_num, std::int64_t max_den)
{
    std::vector<Rational> out;
    while (out.size() < n) {
        Rational r = random_rational(rng, max_num, max_den);
        if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(std::move(r));
    }
    return out;
}

}  // namespace involution
