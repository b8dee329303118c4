#include "involution/parameters.hpp"

#include "involution/errors.hpp"

#include <fmt/core.h>

namespace involution {

Parameters make_parameters(std::vector<Rational> alphas, Rational alpha)
{
    if (alphas.size() < 2)
        throw TooFewCoordinates(fmt::format("need at least 2 coordinates, got {}", alphas.size()));
    if (alphas.size() > kMaxCoordinates)
        throw TooFewCoordinates(fmt::format("at most {} coordinates supported, got {}", kMaxCoordinates,
                                            alphas.size()));
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        alphas[i].canonicalize();
        for (std::size_t j = 0; j < i; ++j)
            if (alphas[i] == alphas[j])
                throw DuplicateAlpha(fmt::format("alpha_{} = alpha_{} = {}", j + 1, i + 1, to_string(alphas[i])));
    }
    alpha.canonicalize();

    Parameters p;
    p.alphas_.reserve(alphas.size());
    for (const auto& a : alphas) p.alphas_.push_back(a.get_d());
    p.alpha_ = alpha.get_d();
    p.exact_alphas_ = std::move(alphas);
    p.exact_alpha_ = std::move(alpha);
    return p;
}

Parameters make_parameters(const std::vector<double>& alphas, double alpha)
{
    std::vector<Rational> exact;
    exact.reserve(alphas.size());
    for (double a : alphas) exact.emplace_back(a);
    return make_parameters(std::move(exact), Rational(alpha));
}

}  // namespace involution
