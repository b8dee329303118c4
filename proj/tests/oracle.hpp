#pragma once

// Independent ways of applying differential operators, used to check the
// normal-ordering engine. Operators are applied to concrete functions factor
// by factor, so the Leibniz reordering done by DiffOp::operator* is never used.

#include "involution/diff_op.hpp"
#include "involution/random.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

namespace oracle {

using involution::GaussianRational;
using involution::Rational;
using involution::ops::DiffOp;
using involution::ops::TermKey;

// ---------------------------------------------------------------------------
// Exact sector: Laurent polynomials with Gaussian-rational coefficients.

using Poly = std::map<std::vector<int>, GaussianRational>;

inline void add_to(Poly& p, const std::vector<int>& e, const GaussianRational& c)
{
    if (c.is_zero()) return;
    auto [it, fresh] = p.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

inline Poly differentiate(const Poly& p, std::size_t i)
{
    Poly out;
    for (const auto& [e, c] : p) {
        if (e[i] == 0) continue;
        auto f = e;
        f[i] -= 1;
        add_to(out, f, c * GaussianRational(static_cast<long>(e[i])));
    }
    return out;
}

// Applies c x^e d^k term by term. Requires integer exponents.
inline Poly apply(const DiffOp& op, const Poly& f)
{
    Poly out;
    for (const auto& [key, c] : op.term_map()) {
        Poly g = f;
        for (std::size_t i = 0; i < key.dexp.size(); ++i)
            for (int r = 0; r < key.dexp[i]; ++r) g = differentiate(g, i);
        for (const auto& [e, gc] : g) {
            auto h = e;
            for (std::size_t i = 0; i < h.size(); ++i) {
                if (key.xquarters[i] % 4 != 0) throw std::logic_error("exact oracle needs integer exponents");
                h[i] += key.xquarters[i] / 4;
            }
            add_to(out, h, c * gc);
        }
    }
    return out;
}

// Applies factors[0] * factors[1] * ... (rightmost first).
inline Poly apply_product(const std::vector<DiffOp>& factors, Poly f)
{
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) f = oracle::apply(*it, f);
    return f;
}

inline Poly monomial(std::vector<int> e) { return Poly{{std::move(e), GaussianRational(1L)}}; }

// All exponent vectors with entries >= 0 and total degree <= d.
inline std::vector<std::vector<int>> exponents_up_to(std::size_t n, int d)
{
    std::vector<std::vector<int>> out;
    std::vector<int> e(n, 0);
    while (true) {
        int total = 0;
        for (int v : e) total += v;
        if (total <= d) out.push_back(e);
        std::size_t k = 0;
        while (k < n && ++e[k] > d) e[k++] = 0;
        if (k == n) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Numeric sector: sums of c x^beta with complex c and real beta.

struct NumTerm {
    std::complex<double> c;
    std::vector<double> beta;
};
using NumFn = std::vector<NumTerm>;

inline std::complex<double> to_complex(const GaussianRational& g)
{
    return {involution::to_double(g.real()), involution::to_double(g.imag())};
}

inline NumFn apply(const DiffOp& op, const NumFn& f)
{
    NumFn out;
    for (const auto& [key, c] : op.term_map())
        for (const auto& t : f) {
            NumTerm u{to_complex(c) * t.c, t.beta};
            for (std::size_t i = 0; i < u.beta.size(); ++i) {
                for (int r = 0; r < key.dexp[i]; ++r) {
                    u.c *= u.beta[i];
                    u.beta[i] -= 1.0;
                }
                u.beta[i] += key.xquarters[i] / 4.0;
            }
            if (u.c != 0.0) out.push_back(std::move(u));
        }
    return out;
}

inline NumFn apply_product(const std::vector<DiffOp>& factors, NumFn f)
{
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) f = oracle::apply(*it, f);
    return f;
}

inline std::complex<double> evaluate(const NumFn& f, const std::vector<double>& x)
{
    std::complex<double> s = 0;
    for (const auto& t : f) {
        std::complex<double> v = t.c;
        for (std::size_t i = 0; i < x.size(); ++i) v *= std::pow(x[i], t.beta[i]);
        s += v;
    }
    return s;
}

// Sum of |terms| at x, the scale against which cancellation is judged.
inline double magnitude(const NumFn& f, const std::vector<double>& x)
{
    double s = 0;
    for (const auto& t : f) {
        double v = std::abs(t.c);
        for (std::size_t i = 0; i < x.size(); ++i) v *= std::pow(x[i], t.beta[i]);
        s += v;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Random operators for property tests.

// Random DiffOp with `terms` terms, derivative orders <= max_d and coordinate
// exponents in quarters within [-max_q, max_q] (polynomial: multiples of 4, >= 0).
inline DiffOp random_op(involution::Rng& rng, std::size_t n, int terms, int max_d, int max_q, bool polynomial)
{
    DiffOp op(n);
    for (int t = 0; t < terms; ++t) {
        TermKey key{std::vector<int>(n), std::vector<int>(n)};
        for (std::size_t i = 0; i < n; ++i) {
            key.dexp[i] = static_cast<int>(rng.integer(0, max_d));
            key.xquarters[i] = polynomial ? 4 * static_cast<int>(rng.integer(0, max_q / 4))
                                          : static_cast<int>(rng.integer(-max_q, max_q));
        }
        const GaussianRational c(involution::random_rational(rng, 5, 4), involution::random_rational(rng, 3, 3));
        op.add_term(c, key);
    }
    return op;
}

}  // namespace oracle
