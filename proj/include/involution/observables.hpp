#pragma once

#include "involution/observable.hpp"
#include "involution/parameters.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace involution {

// Indices are 0-based here; names and reports are 1-based ("F1", "L12").

enum class FamilyKind {
    F,          // p_i^2 + sum' J_ij^2/alpha_ij               (ellipsoid geodesics)
    G,          // x_i^2 + sum' J_ij^2/alpha_ij               (Neumann problem)
    Jalpha,     // alpha x_i p_i + sum' J_ij^2/alpha_ij
    Htilde,     // sum' x_k x_l (p_k - p_l)^2/alpha_kl + alpha x_k p_k
    H,          // sum' p_k (x_k - x_l)^2 p_l/alpha_kl - alpha x_k p_k
    SqrtLTail,  // sum' L_ij^2/alpha_ij with L_ij = -2 sqrt(x_i x_j)(p_i - p_j)
};

enum class HamiltonianKind { EllipsoidGeodesic, Neumann, QuarticN2 };

std::string_view family_tag(FamilyKind kind);
std::optional<FamilyKind> parse_family_tag(std::string_view tag);

// 1/(a_ik a_kl) + 1/(a_kl a_li) + 1/(a_li a_ik), exact. Requires distinct i, k, l.
Rational cyclic_identity_residual(const Parameters& params, std::size_t i, std::size_t k, std::size_t l);

Observable make_F(std::size_t i, const Parameters& params);
Observable make_G(std::size_t i, const Parameters& params);
Observable make_Jalpha(std::size_t i, const Parameters& params);
Observable make_Htilde(std::size_t k, const Parameters& params);
Observable make_H(std::size_t k, const Parameters& params);
Observable make_sqrtL_tail(std::size_t i, const Parameters& params);

// J_ij = x_i p_j - x_j p_i
Observable make_angularJ(std::size_t i, std::size_t j, std::size_t n);
// L_ij = -2 sqrt(x_i x_j) (p_i - p_j); needs x_i, x_j > 0.
Observable make_sqrtL(std::size_t i, std::size_t j, std::size_t n);

Observable make_member(FamilyKind kind, std::size_t i, const Parameters& params);
std::vector<Observable> make_family(FamilyKind kind, const Parameters& params);

// EllipsoidGeodesic: |p|^2/2. Neumann: |p|^2/2 + sum alpha_i x_i^2/2.
// QuarticN2 (N = 2): (P^2 q^2/4 - p^2 q^2)/(2 mu) with q = x2 - x1,
// p = (p2 - p1)/2, P = p1 + p2, mu = alpha_1 alpha_2.
Observable make_hamiltonian(HamiltonianKind kind, const Parameters& params);

// sum_k H_k/alpha_k, a flat Hamiltonian in involution with every H_k.
Observable make_weighted_H_sum(const Parameters& params);

// Looks up a single member by its report name, e.g. "F1", "Htilde3", "T2".
Observable make_named(std::string_view name, const Parameters& params);

}  // namespace involution
