#include "involution/operator_algebra.hpp"

#include "involution/errors.hpp"

#include <fmt/core.h>

namespace involution::ops {

namespace {

Rational quarter(long num)
{
    Rational r(num, 4);
    r.canonicalize();
    return r;
}

Rational inverse_difference(const Parameters& params, std::size_t i, std::size_t j)
{
    Rational r = 1 / params.exact_alpha_diff(i, j);
    r.canonicalize();
    return r;
}

void check_indices(std::size_t n, std::initializer_list<std::size_t> idx)
{
    for (std::size_t i : idx)
        if (i >= n) throw ConfigError(fmt::format("index {} out of range 1..{}", i + 1, n));
}

}  // namespace

DiffOp rho(std::size_t i, std::size_t j, std::size_t n)
{
    check_indices(n, {i, j});
    return DiffOp::power(n, i, quarter(1)) * DiffOp::power(n, j, quarter(1));
}

DiffOp rho_squared(std::size_t i, std::size_t j, std::size_t n)
{
    check_indices(n, {i, j});
    return DiffOp::power(n, i, quarter(2)) * DiffOp::power(n, j, quarter(2));
}

DiffOp difference_derivative(std::size_t i, std::size_t j, std::size_t n)
{
    return DiffOp::derivative(n, i) - DiffOp::derivative(n, j);
}

DiffOp coordinate_difference(std::size_t i, std::size_t j, std::size_t n)
{
    return DiffOp::coordinate(n, i) - DiffOp::coordinate(n, j);
}

DiffOp symmetric_euler(std::size_t k, std::size_t n)
{
    const DiffOp x = DiffOp::coordinate(n, k);
    const DiffOp d = DiffOp::derivative(n, k);
    return x * d + d * x;
}

DiffOp build_Lhat(std::size_t i, std::size_t j, std::size_t n)
{
    check_indices(n, {i, j});
    if (i == j) return DiffOp(n);
    const DiffOp r = rho(i, j, n);
    return GaussianRational(2L) * (r * difference_derivative(i, j, n) * r);
}

DiffOp build_Jhat(std::size_t i, std::size_t j, std::size_t n)
{
    check_indices(n, {i, j});
    return DiffOp::coordinate(n, i) * DiffOp::derivative(n, j) - DiffOp::coordinate(n, j) * DiffOp::derivative(n, i);
}

DiffOp build_Hhat(std::size_t k, const Parameters& params)
{
    const std::size_t n = params.n();
    check_indices(n, {k});
    DiffOp out(n);
    for (std::size_t l = 0; l < n; ++l) {
        if (l == k) continue;
        const DiffOp r = rho(k, l, n);
        const DiffOp d = difference_derivative(k, l, n);
        const DiffOp middle = GaussianRational(inverse_difference(params, k, l)) * rho_squared(k, l, n);
        out -= r * d * middle * d * r;
    }
    // -(i alpha / 2)(x_k d_k + d_k x_k)
    const GaussianRational coeff(Rational(0), Rational(-params.exact_alpha() / 2));
    out += coeff * symmetric_euler(k, n);
    return out;
}

DiffOp build_angular_tail(std::size_t i, const Parameters& params)
{
    const std::size_t n = params.n();
    check_indices(n, {i});
    DiffOp out(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const DiffOp jij = build_Jhat(i, j, n);
        out += GaussianRational(inverse_difference(params, i, j)) * (jij * jij);
    }
    return out;
}

DiffOp build_Jalpha_hat(std::size_t i, const Parameters& params)
{
    const std::size_t n = params.n();
    return GaussianRational(params.exact_alpha()) * (DiffOp::coordinate(n, i) * DiffOp::derivative(n, i))
           + build_angular_tail(i, params);
}

DiffOp build_dilation_tail(std::size_t i, const Parameters& params)
{
    const std::size_t n = params.n();
    check_indices(n, {i});
    DiffOp out(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const DiffOp xij = coordinate_difference(i, j, n);
        const DiffOp dd = DiffOp::derivative(n, i) * DiffOp::derivative(n, j);
        out += GaussianRational(inverse_difference(params, i, j)) * (xij * dd * xij);
    }
    return out;
}

DiffOp build_naive(std::size_t i, const Parameters& params)
{
    const std::size_t n = params.n();
    check_indices(n, {i});
    DiffOp out(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const DiffOp xij = coordinate_difference(i, j, n);
        const DiffOp d = difference_derivative(i, j, n);
        out += GaussianRational(inverse_difference(params, i, j)) * (xij * d * d * xij);
    }
    return out;
}

DiffOp build_naive_symmetric(std::size_t i, const Parameters& params)
{
    const std::size_t n = params.n();
    check_indices(n, {i});
    DiffOp out(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const DiffOp xij = coordinate_difference(i, j, n);
        const DiffOp d2 = difference_derivative(i, j, n) * difference_derivative(i, j, n);
        const DiffOp x2 = xij * xij;
        const DiffOp sym = x2 * d2 + GaussianRational(2L) * (xij * d2 * xij) + d2 * x2;
        Rational w = inverse_difference(params, i, j) / 4;
        w.canonicalize();
        out += GaussianRational(w) * sym;
    }
    return out;
}

DiffOp naive_obstruction_pattern(std::size_t i, std::size_t k, const Parameters& params)
{
    const std::size_t n = params.n();
    check_indices(n, {i, k});
    auto inv2 = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
        Rational r = 1 / (params.exact_alpha_diff(a, b) * params.exact_alpha_diff(c, d));
        r.canonicalize();
        return GaussianRational(r);
    };
    auto d = [n](std::size_t a) { return DiffOp::derivative(n, a); };
    DiffOp out(n);
    for (std::size_t l = 0; l < n; ++l) {
        if (l == i || l == k) continue;
        out += inv2(i, l, k, l) * (coordinate_difference(i, k, n) * (d(i) + d(k) - d(l)));
        out += inv2(k, i, l, i) * (coordinate_difference(k, l, n) * (d(k) + d(l) - d(i)));
        out += inv2(l, k, i, k) * (coordinate_difference(l, i, n) * (d(l) + d(i) - d(k)));
    }
    return out;
}

}  // namespace involution::ops
