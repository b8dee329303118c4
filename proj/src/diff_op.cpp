#include "involution/diff_op.hpp"

#include "involution/errors.hpp"

#include <fmt/core.h>

#include <numeric>

namespace involution::ops {

int TermKey::total_order() const
{
    return std::accumulate(dexp.begin(), dexp.end(), 0);
}

DiffOp DiffOp::scalar(std::size_t n, const GaussianRational& c)
{
    DiffOp op(n);
    op.add_term(c, {std::vector<int>(n, 0), std::vector<int>(n, 0)});
    return op;
}

DiffOp DiffOp::power(std::size_t n, std::size_t i, const Rational& q)
{
    if (i >= n) throw ConfigError(fmt::format("coordinate index {} out of range", i + 1));
    Rational quarters = q * 4;
    quarters.canonicalize();
    if (quarters.get_den() != 1) throw ConfigError("coordinate exponents must be multiples of 1/4");
    TermKey key{std::vector<int>(n, 0), std::vector<int>(n, 0)};
    key.xquarters[i] = static_cast<int>(quarters.get_num().get_si());
    DiffOp op(n);
    op.add_term(1L, key);
    return op;
}

DiffOp DiffOp::derivative(std::size_t n, std::size_t i, int order)
{
    if (i >= n) throw ConfigError(fmt::format("coordinate index {} out of range", i + 1));
    if (order < 0) throw ConfigError("derivative order must be nonnegative");
    TermKey key{std::vector<int>(n, 0), std::vector<int>(n, 0)};
    key.dexp[i] = order;
    DiffOp op(n);
    op.add_term(1L, key);
    return op;
}

DiffOp DiffOp::monomial(const GaussianRational& c, TermKey key)
{
    DiffOp op(key.dexp.size());
    op.add_term(c, key);
    return op;
}

std::vector<OpTerm> DiffOp::terms() const
{
    std::vector<OpTerm> out;
    out.reserve(terms_.size());
    for (const auto& [key, c] : terms_) out.push_back({c, key});
    return out;
}

void DiffOp::add_term(const GaussianRational& c, const TermKey& key)
{
    if (key.dexp.size() != n_ || key.xquarters.size() != n_)
        throw ConfigError("term key dimension does not match operator");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

int DiffOp::order() const
{
    int best = -1;
    for (const auto& [key, c] : terms_) best = std::max(best, key.total_order());
    return best;
}

bool DiffOp::has_constant_term() const
{
    for (const auto& [key, c] : terms_) {
        bool constant = true;
        for (std::size_t i = 0; i < n_ && constant; ++i) constant = key.dexp[i] == 0 && key.xquarters[i] == 0;
        if (constant) return true;
    }
    return false;
}

bool DiffOp::all_coefficients_real() const
{
    for (const auto& [key, c] : terms_)
        if (!c.is_real()) return false;
    return true;
}

namespace {

DiffOp transpose_impl(const DiffOp& op, bool conjugate)
{
    const std::size_t n = op.n();
    DiffOp out(n);
    for (const auto& [key, c] : op.term_map()) {
        TermKey deriv{key.dexp, std::vector<int>(n, 0)};
        TermKey mult{std::vector<int>(n, 0), key.xquarters};
        GaussianRational coeff = conjugate ? c.conj() : c;
        if (key.total_order() % 2 != 0) coeff = -coeff;
        out += DiffOp::monomial(coeff, deriv) * DiffOp::monomial(1L, mult);
    }
    return out;
}

}  // namespace

DiffOp DiffOp::formal_transpose() const
{
    return transpose_impl(*this, false);
}

DiffOp DiffOp::formal_adjoint() const
{
    return transpose_impl(*this, true);
}

void DiffOp::check_compatible(const DiffOp& o) const
{
    if (o.n_ != n_) throw ConfigError(fmt::format("operators on {} and {} coordinates", n_, o.n_));
}

DiffOp& DiffOp::operator+=(const DiffOp& o)
{
    check_compatible(o);
    for (const auto& [key, c] : o.terms_) add_term(c, key);
    return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o)
{
    check_compatible(o);
    for (const auto& [key, c] : o.terms_) add_term(-c, key);
    return *this;
}

DiffOp& DiffOp::operator*=(const GaussianRational& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, coeff] : terms_) coeff *= c;
    return *this;
}

namespace {

// One coordinate's contribution to d^order x^{quarters/4}:
//   sum_k C(order, k) e(e-1)...(e-k+1) x^{e-k} d^{order-k}.
struct LeibnizTerm {
    int k;
    Rational factor;
};

std::vector<LeibnizTerm> leibniz_expansion(int order, int quarters)
{
    std::vector<LeibnizTerm> out;
    Rational falling(1);
    mpz_class binom(1);
    for (int k = 0; k <= order; ++k) {
        if (k > 0) {
            // e - (k-1) with e = quarters/4
            Rational step(quarters - 4 * (k - 1), 4);
            step.canonicalize();
            falling *= step;
            binom = binom * (order - k + 1) / k;
        }
        if (sgn(falling) == 0) break;  // nonnegative integer exponent exhausted
        Rational f = falling * Rational(binom);
        f.canonicalize();
        out.push_back({k, std::move(f)});
    }
    return out;
}

}  // namespace

DiffOp operator*(const DiffOp& a, const DiffOp& b)
{
    a.check_compatible(b);
    const std::size_t n = a.n_;
    DiffOp out(n);

    std::vector<std::size_t> active;
    std::vector<std::vector<LeibnizTerm>> expansions(n);
    std::vector<std::size_t> cursor;

    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            active.clear();
            for (std::size_t i = 0; i < n; ++i) {
                if (ka.dexp[i] > 0 && kb.xquarters[i] != 0) {
                    expansions[i] = leibniz_expansion(ka.dexp[i], kb.xquarters[i]);
                    active.push_back(i);
                }
            }
            const GaussianRational base = ca * cb;

            TermKey key{std::vector<int>(n), std::vector<int>(n)};
            for (std::size_t i = 0; i < n; ++i) {
                key.dexp[i] = ka.dexp[i] + kb.dexp[i];
                key.xquarters[i] = ka.xquarters[i] + kb.xquarters[i];
            }
            if (active.empty()) {
                out.add_term(base, key);
                continue;
            }

            // Odometer over the per-coordinate expansions.
            cursor.assign(active.size(), 0);
            while (true) {
                Rational factor(1);
                TermKey shifted = key;
                for (std::size_t s = 0; s < active.size(); ++s) {
                    const std::size_t i = active[s];
                    const LeibnizTerm& t = expansions[i][cursor[s]];
                    factor *= t.factor;
                    shifted.dexp[i] -= t.k;
                    shifted.xquarters[i] -= 4 * t.k;
                }
                out.add_term(base * GaussianRational(factor), shifted);

                std::size_t s = 0;
                while (s < active.size() && ++cursor[s] == expansions[active[s]].size()) cursor[s++] = 0;
                if (s == active.size()) break;
            }
        }
    }
    return out;
}

DiffOp multiply(const DiffOp& a, const DiffOp& b)
{
    return a * b;
}

DiffOp commutator(const DiffOp& a, const DiffOp& b)
{
    return a * b - b * a;
}

// ---------------------------------------------------------------------------

namespace {

std::string quarter_exponent(int quarters)
{
    Rational q(quarters, 4);
    q.canonicalize();
    return to_string(q);
}

}  // namespace

std::string render_term(const GaussianRational& c, const TermKey& key)
{
    std::string out = "(" + to_string(c) + ")";
    for (std::size_t i = 0; i < key.xquarters.size(); ++i) {
        const int e = key.xquarters[i];
        if (e == 0) continue;
        out += fmt::format(" x{}", i + 1);
        if (e != 4) out += "^{" + quarter_exponent(e) + "}";
    }
    for (std::size_t i = 0; i < key.dexp.size(); ++i) {
        const int d = key.dexp[i];
        if (d == 0) continue;
        out += fmt::format(" d{}", i + 1);
        if (d != 1) out += fmt::format("^{{{}}}", d);
    }
    return out;
}

std::string render(const DiffOp& op)
{
    if (op.is_zero()) return "0";
    std::string out;
    for (const auto& [key, c] : op.term_map()) {
        if (!out.empty()) out += " + ";
        out += render_term(c, key);
    }
    return out;
}

std::string render_lines(const DiffOp& op)
{
    if (op.is_zero()) return "0\n";
    std::string out;
    for (const auto& [key, c] : op.term_map()) out += render_term(c, key) + "\n";
    return out;
}

}  // namespace involution::ops
