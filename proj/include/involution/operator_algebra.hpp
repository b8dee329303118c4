#pragma once

#include "involution/diff_op.hpp"
#include "involution/parameters.hpp"

#include <string>
#include <vector>

namespace involution::ops {

// Building blocks (0-based indices, n coordinates).

// rho_ij = (x_i x_j)^{1/4}
DiffOp rho(std::size_t i, std::size_t j, std::size_t n);
// rho_ij^2 = sqrt(x_i x_j); rho_ii^2 = x_i.
DiffOp rho_squared(std::size_t i, std::size_t j, std::size_t n);
// d_i - d_j
DiffOp difference_derivative(std::size_t i, std::size_t j, std::size_t n);
// x_i - x_j
DiffOp coordinate_difference(std::size_t i, std::size_t j, std::size_t n);
// x_k d_k + d_k x_k
DiffOp symmetric_euler(std::size_t k, std::size_t n);

// L_ij = 2 rho_ij (d_i - d_j) rho_ij. Returns zero for i == j.
DiffOp build_Lhat(std::size_t i, std::size_t j, std::size_t n);

// J_ij = x_i d_j - x_j d_i, the operator form of x_i p_j - x_j p_i.
DiffOp build_Jhat(std::size_t i, std::size_t j, std::size_t n);

// H_k = -sum_{l != k} rho_kl (d_k - d_l) (rho_kl^2 / alpha_kl) (d_k - d_l) rho_kl
//       - (i alpha / 2)(x_k d_k + d_k x_k)
// using the exact alphas of `params`.
DiffOp build_Hhat(std::size_t k, const Parameters& params);

// sum_{j != i} J_ij^2 / alpha_ij
DiffOp build_angular_tail(std::size_t i, const Parameters& params);

// alpha x_i d_i + sum_{j != i} J_ij^2 / alpha_ij (operator form of J_i).
DiffOp build_Jalpha_hat(std::size_t i, const Parameters& params);

// sum_{j != i} x_ij (d_i d_j / alpha_ij) x_ij
DiffOp build_dilation_tail(std::size_t i, const Parameters& params);

// N_i = sum_{j != i} x_ij ((d_i - d_j)^2 / alpha_ij) x_ij, the naive
// quantisation of H_i at alpha = 0.
DiffOp build_naive(std::size_t i, const Parameters& params);

// Symmetrised ordering of the same symbol:
// sum_{j != i} (x_ij^2 D^2 + 2 x_ij D^2 x_ij + D^2 x_ij^2) / (4 alpha_ij), D = d_i - d_j.
DiffOp build_naive_symmetric(std::size_t i, const Parameters& params);

// First-order pattern sum over l not in {i,k} of
//   x_ik/(a_il a_kl)(d_i + d_k - d_l) + x_kl/(a_ki a_li)(d_k + d_l - d_i) + x_li/(a_lk a_ik)(d_l + d_i - d_k).
DiffOp naive_obstruction_pattern(std::size_t i, std::size_t k, const Parameters& params);

}  // namespace involution::ops
