#include "involution/observables.hpp"

#include "involution/errors.hpp"

#include <fmt/core.h>

#include <array>
#include <charconv>
#include <utility>

namespace involution {

namespace {

void check_index(std::size_t i, std::size_t n)
{
    if (i >= n) throw ConfigError(fmt::format("index {} out of range 1..{}", i + 1, n));
}

// 1/alpha_ij for j != i (entry i unused).
std::vector<double> inverse_differences(std::size_t i, const Parameters& params)
{
    std::vector<double> inv(params.n(), 0.0);
    for (std::size_t j = 0; j < params.n(); ++j)
        if (j != i) inv[j] = 1.0 / params.alpha_diff(i, j);
    return inv;
}

// sum_{j != i} (x_i p_j - x_j p_i)^2 / alpha_ij
template <typename T>
T angular_tail(std::span<const T> x, std::span<const T> p, std::size_t i, const std::vector<double>& inv)
{
    T s(0.0);
    for (std::size_t j = 0; j < inv.size(); ++j) {
        if (j == i) continue;
        const T jij = x[i] * p[j] - x[j] * p[i];
        s += jij * jij * T(inv[j]);
    }
    return s;
}

constexpr std::array<std::pair<FamilyKind, std::string_view>, 6> kFamilyTags{{
    {FamilyKind::F, "F"},
    {FamilyKind::G, "G"},
    {FamilyKind::Jalpha, "Jalpha"},
    {FamilyKind::Htilde, "Htilde"},
    {FamilyKind::H, "H"},
    {FamilyKind::SqrtLTail, "sqrtL-tails"},
}};

}  // namespace

std::string_view family_tag(FamilyKind kind)
{
    for (const auto& [k, tag] : kFamilyTags)
        if (k == kind) return tag;
    return "?";
}

std::optional<FamilyKind> parse_family_tag(std::string_view tag)
{
    for (const auto& [k, t] : kFamilyTags)
        if (t == tag) return k;
    return std::nullopt;
}

Rational cyclic_identity_residual(const Parameters& params, std::size_t i, std::size_t k, std::size_t l)
{
    check_index(i, params.n());
    check_index(k, params.n());
    check_index(l, params.n());
    if (i == k || k == l || l == i) throw ConfigError("cyclic identity needs three distinct indices");
    const Rational a_ik = params.exact_alpha_diff(i, k);
    const Rational a_kl = params.exact_alpha_diff(k, l);
    const Rational a_li = params.exact_alpha_diff(l, i);
    Rational r = 1 / (a_ik * a_kl) + 1 / (a_kl * a_li) + 1 / (a_li * a_ik);
    r.canonicalize();
    return r;
}

Observable make_F(std::size_t i, const Parameters& params)
{
    check_index(i, params.n());
    auto inv = inverse_differences(i, params);
    return Observable::from_program(params.n(), fmt::format("F{}", i + 1), [i, inv](auto x, auto p) {
        return p[i] * p[i] + angular_tail(x, p, i, inv);
    });
}

Observable make_G(std::size_t i, const Parameters& params)
{
    check_index(i, params.n());
    auto inv = inverse_differences(i, params);
    return Observable::from_program(params.n(), fmt::format("G{}", i + 1), [i, inv](auto x, auto p) {
        return x[i] * x[i] + angular_tail(x, p, i, inv);
    });
}

Observable make_Jalpha(std::size_t i, const Parameters& params)
{
    check_index(i, params.n());
    auto inv = inverse_differences(i, params);
    const double alpha = params.alpha();
    return Observable::from_program(params.n(), fmt::format("Jalpha{}", i + 1), [i, inv, alpha](auto x, auto p) {
        using T = typename decltype(x)::value_type;
        return T(alpha) * x[i] * p[i] + angular_tail(x, p, i, inv);
    });
}

Observable make_Htilde(std::size_t k, const Parameters& params)
{
    check_index(k, params.n());
    auto inv = inverse_differences(k, params);
    const double alpha = params.alpha();
    return Observable::from_program(params.n(), fmt::format("Htilde{}", k + 1), [k, inv, alpha](auto x, auto p) {
        using T = typename decltype(x)::value_type;
        T s(0.0);
        for (std::size_t l = 0; l < inv.size(); ++l) {
            if (l == k) continue;
            const T dp = p[k] - p[l];
            s += x[k] * x[l] * dp * dp * T(inv[l]);
        }
        return s + T(alpha) * x[k] * p[k];
    });
}

Observable make_H(std::size_t k, const Parameters& params)
{
    check_index(k, params.n());
    auto inv = inverse_differences(k, params);
    const double alpha = params.alpha();
    return Observable::from_program(params.n(), fmt::format("H{}", k + 1), [k, inv, alpha](auto x, auto p) {
        using T = typename decltype(x)::value_type;
        T s(0.0);
        for (std::size_t l = 0; l < inv.size(); ++l) {
            if (l == k) continue;
            const T dx = x[k] - x[l];
            s += p[k] * dx * dx * p[l] * T(inv[l]);
        }
        return s - T(alpha) * x[k] * p[k];
    });
}

Observable make_angularJ(std::size_t i, std::size_t j, std::size_t n)
{
    check_index(i, n);
    check_index(j, n);
    return Observable::from_program(n, fmt::format("J{}{}", i + 1, j + 1),
                                    [i, j](auto x, auto p) { return x[i] * p[j] - x[j] * p[i]; });
}

Observable make_sqrtL(std::size_t i, std::size_t j, std::size_t n)
{
    check_index(i, n);
    check_index(j, n);
    if (i == j) throw ConfigError("L_ij needs i != j");
    return Observable::from_program(n, fmt::format("L{}{}", i + 1, j + 1), [i, j](auto x, auto p) {
        using T = typename decltype(x)::value_type;
        return T(-2.0) * positive_sqrt(x[i] * x[j], "sqrt(x_i x_j)") * (p[i] - p[j]);
    });
}

Observable make_sqrtL_tail(std::size_t i, const Parameters& params)
{
    check_index(i, params.n());
    auto inv = inverse_differences(i, params);
    return Observable::from_program(params.n(), fmt::format("T{}", i + 1), [i, inv](auto x, auto p) {
        using T = typename decltype(x)::value_type;
        T s(0.0);
        for (std::size_t j = 0; j < inv.size(); ++j) {
            if (j == i) continue;
            // L_ij^2 = 4 x_i x_j (p_i - p_j)^2; the root is still checked for the domain.
            const T lij = T(-2.0) * positive_sqrt(x[i] * x[j], "sqrt(x_i x_j)") * (p[i] - p[j]);
            s += lij * lij * T(inv[j]);
        }
        return s;
    });
}

Observable make_member(FamilyKind kind, std::size_t i, const Parameters& params)
{
    switch (kind) {
    case FamilyKind::F: return make_F(i, params);
    case FamilyKind::G: return make_G(i, params);
    case FamilyKind::Jalpha: return make_Jalpha(i, params);
    case FamilyKind::Htilde: return make_Htilde(i, params);
    case FamilyKind::H: return make_H(i, params);
    case FamilyKind::SqrtLTail: return make_sqrtL_tail(i, params);
    }
    throw ConfigError("unknown family");
}

std::vector<Observable> make_family(FamilyKind kind, const Parameters& params)
{
    std::vector<Observable> out;
    out.reserve(params.n());
    for (std::size_t i = 0; i < params.n(); ++i) out.push_back(make_member(kind, i, params));
    return out;
}

Observable make_hamiltonian(HamiltonianKind kind, const Parameters& params)
{
    const std::size_t n = params.n();
    switch (kind) {
    case HamiltonianKind::EllipsoidGeodesic:
        return Observable::from_program(n, "H_geodesic", [n](auto x, auto p) {
            using T = typename decltype(x)::value_type;
            T s(0.0);
            for (std::size_t i = 0; i < n; ++i) s += p[i] * p[i];
            return T(0.5) * s;
        });
    case HamiltonianKind::Neumann: {
        std::vector<double> a(params.alphas().begin(), params.alphas().end());
        return Observable::from_program(n, "H_neumann", [a](auto x, auto p) {
            using T = typename decltype(x)::value_type;
            T s(0.0);
            for (std::size_t i = 0; i < a.size(); ++i) s += p[i] * p[i] + T(a[i]) * x[i] * x[i];
            return T(0.5) * s;
        });
    }
    case HamiltonianKind::QuarticN2: {
        if (n != 2) throw ConfigError("the quartic Hamiltonian is defined for N = 2 only");
        const double mu = params.alpha_i(0) * params.alpha_i(1);
        if (mu == 0.0) throw ConfigError("quartic Hamiltonian needs mu = alpha_1 alpha_2 != 0");
        return Observable::from_program(n, "H_quartic", [mu](auto x, auto p) {
            using T = typename decltype(x)::value_type;
            const T q = x[1] - x[0];
            const T pr = T(0.5) * (p[1] - p[0]);
            const T total = p[0] + p[1];
            return (T(0.25) * total * total * q * q - pr * pr * q * q) / T(2.0 * mu);
        });
    }
    }
    throw ConfigError("unknown Hamiltonian kind");
}

Observable make_weighted_H_sum(const Parameters& params)
{
    std::vector<Observable> hs = make_family(FamilyKind::H, params);
    std::vector<double> w;
    for (std::size_t k = 0; k < params.n(); ++k) {
        if (params.alpha_i(k) == 0.0) throw ConfigError("sum H_k/alpha_k needs every alpha_k != 0");
        w.push_back(1.0 / params.alpha_i(k));
    }
    return Observable::from_program(params.n(), "sum_H_over_alpha", [hs, w](auto x, auto p) {
        using T = typename decltype(x)::value_type;
        T s(0.0);
        for (std::size_t k = 0; k < hs.size(); ++k) s += T(w[k]) * hs[k].template call<T>(x, p);
        return s;
    });
}

Observable make_named(std::string_view name, const Parameters& params)
{
    // Longest prefixes first so "Htilde" wins over "H".
    static constexpr std::array<std::pair<std::string_view, FamilyKind>, 6> kPrefixes{{
        {"Jalpha", FamilyKind::Jalpha},
        {"Htilde", FamilyKind::Htilde},
        {"F", FamilyKind::F},
        {"G", FamilyKind::G},
        {"H", FamilyKind::H},
        {"T", FamilyKind::SqrtLTail},
    }};
    for (const auto& [prefix, kind] : kPrefixes) {
        if (name.substr(0, prefix.size()) != prefix) continue;
        std::string_view digits = name.substr(prefix.size());
        std::size_t index = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || index == 0) break;
        return make_member(kind, index - 1, params);
    }
    throw ConfigError(fmt::format("unknown observable '{}'", name));
}

}  // namespace involution
