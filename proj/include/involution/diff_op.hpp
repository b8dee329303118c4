#pragma once

#include "involution/rational.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace involution::ops {

// Exponent multi-index of a term. Coordinate powers are stored in quarters
// (x_i^{q} has quarters[i] = 4q, possibly negative); derivative orders are
// nonnegative integers.
struct TermKey {
    std::vector<int> dexp;
    std::vector<int> xquarters;

    // Lexicographic on (dexp, xquarters).
    friend bool operator<(const TermKey& a, const TermKey& b)
    {
        if (a.dexp != b.dexp) return a.dexp < b.dexp;
        return a.xquarters < b.xquarters;
    }
    friend bool operator==(const TermKey& a, const TermKey& b) = default;

    int total_order() const;
};

struct OpTerm {
    GaussianRational coeff;
    TermKey key;
};

// Differential operator in normal form: sum of coeff * prod x_i^{e_i} * prod d_i^{k_i}
// with every coordinate power to the left of every derivative. Terms are kept
// keyed and sorted; zero coefficients are never stored, so two operators are
// equal exactly when their term lists agree.
class DiffOp {
public:
    explicit DiffOp(std::size_t n) : n_(n) {}

    static DiffOp scalar(std::size_t n, const GaussianRational& c);
    static DiffOp identity(std::size_t n) { return scalar(n, 1L); }
    // x_i^q; q must be a multiple of 1/4.
    static DiffOp power(std::size_t n, std::size_t i, const Rational& q);
    static DiffOp coordinate(std::size_t n, std::size_t i) { return power(n, i, 1); }
    // d_i^order
    static DiffOp derivative(std::size_t n, std::size_t i, int order = 1);
    static DiffOp monomial(const GaussianRational& c, TermKey key);

    std::size_t n() const { return n_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    std::vector<OpTerm> terms() const;
    const std::map<TermKey, GaussianRational>& term_map() const { return terms_; }

    // Merges into an existing key; drops the term if the sum is zero.
    void add_term(const GaussianRational& c, const TermKey& key);

    // Highest total derivative order (0 for multiplication operators, -1 for zero).
    int order() const;
    bool has_constant_term() const;
    bool all_coefficients_real() const;

    // Transpose under integration by parts: (c x^e d^k)^T = c (-d)^k x^e.
    DiffOp formal_transpose() const;
    // Same with complex conjugated coefficients.
    DiffOp formal_adjoint() const;

    DiffOp& operator+=(const DiffOp& o);
    DiffOp& operator-=(const DiffOp& o);
    DiffOp& operator*=(const GaussianRational& c);

    friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
    friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
    friend DiffOp operator-(DiffOp a) { return a *= GaussianRational(-1L); }
    friend DiffOp operator*(const GaussianRational& c, DiffOp a) { return a *= c; }
    friend DiffOp operator*(DiffOp a, const GaussianRational& c) { return a *= c; }

    // Normal-ordered operator product.
    friend DiffOp operator*(const DiffOp& a, const DiffOp& b);

    friend bool operator==(const DiffOp& a, const DiffOp& b) = default;

private:
    void check_compatible(const DiffOp& o) const;

    std::size_t n_;
    std::map<TermKey, GaussianRational> terms_;
};

DiffOp multiply(const DiffOp& a, const DiffOp& b);
DiffOp commutator(const DiffOp& a, const DiffOp& b);

// Canonical one-line rendering, e.g. "(1/2) x1^{-1/2} x2^{1/2} + (2) x1^{1/2} x2^{1/2} d1".
// The zero operator renders as "0".
std::string render(const DiffOp& op);
// One term per line, same term format.
std::string render_lines(const DiffOp& op);
std::string render_term(const GaussianRational& c, const TermKey& key);

}  // namespace involution::ops
