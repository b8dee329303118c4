#pragma once

#include "involution/rational.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace involution {

// Upper bound on N; DualScalar keeps its 2N partials inline.
inline constexpr std::size_t kMaxCoordinates = 12;

// The constants alpha_1..alpha_N (pairwise distinct) and the scalar alpha.
// Values are held exactly; double mirrors feed the numeric paths.
class Parameters {
public:
    const std::vector<Rational>& exact_alphas() const { return exact_alphas_; }
    const Rational& exact_alpha() const { return exact_alpha_; }

    std::span<const double> alphas() const { return alphas_; }
    double alpha_i(std::size_t i) const { return alphas_[i]; }
    double alpha() const { return alpha_; }
    std::size_t n() const { return alphas_.size(); }

    // alpha_i - alpha_j
    double alpha_diff(std::size_t i, std::size_t j) const { return alphas_[i] - alphas_[j]; }
    Rational exact_alpha_diff(std::size_t i, std::size_t j) const { return exact_alphas_[i] - exact_alphas_[j]; }

private:
    friend Parameters make_parameters(std::vector<Rational> alphas, Rational alpha);

    std::vector<Rational> exact_alphas_;
    Rational exact_alpha_{0};
    std::vector<double> alphas_;
    double alpha_ = 0.0;
};

// Throws TooFewCoordinates (N < 2 or N > kMaxCoordinates) or DuplicateAlpha.
Parameters make_parameters(std::vector<Rational> alphas, Rational alpha = 0);
// Doubles convert to the rationals they represent exactly.
Parameters make_parameters(const std::vector<double>& alphas, double alpha = 0.0);

}  // namespace involution
