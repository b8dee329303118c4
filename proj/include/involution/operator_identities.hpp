#pragma once

#include "involution/diff_op.hpp"
#include "involution/parameters.hpp"

#include <optional>
#include <string>
#include <vector>

namespace involution::ops {

enum class Execution { Serial, Parallel };

// One exact check. `term_count` is the number of terms left in the residual
// (0 means the relation holds exactly). Informational checks (asserted =
// false) are reported but never fail a report.
struct IdentityCheck {
    std::string id;
    std::size_t term_count = 0;
    bool asserted = true;
    bool passed = false;
    std::string detail;
};

struct IdentityReport {
    std::string relation;
    std::vector<IdentityCheck> checks;
    std::vector<std::string> notes;

    bool passed() const;
    std::size_t asserted_count() const;
};

// c with a = c b, if one exists. Needs both a and b nonzero, so a vanishing
// operator never counts as matching a pattern.
std::optional<GaussianRational> proportionality(const DiffOp& a, const DiffOp& b);

// [L_ij, L_kl] = -d_jk L_il + d_ik L_jl + d_jl L_ik - d_il L_jk over all
// i<j, k<l. Requires n >= 3.
IdentityReport verify_soN(std::size_t n, Execution exec = Execution::Parallel);

// Relations of L with x_k d_k, x_k, d_k and rho_kl^2, each checked exactly in
// the printed form; the remaining sign completion of the rho relation and the
// coefficient that makes the x_k d_k relation hold are derived and reported.
IdentityReport verify_aux_relations(std::size_t n, Execution exec = Execution::Parallel);

// [H_i, H_k] = 0 for all pairs, sum_k H_k = -(i alpha/2) sum_k (x_k d_k + d_k x_k),
// formal symmetry of the alpha-free part and formal self-adjointness.
IdentityReport verify_hk(const Parameters& params, Execution exec = Execution::Parallel);

// C_ik = [x_k d_k, sum_{j != i} J_ij^2/alpha_ij] is symmetric in i <-> k, and
// the operators alpha x_i d_i + sum_{j != i} J_ij^2/alpha_ij commute.
IdentityReport verify_xpJ_symmetry(const Parameters& params, Execution exec = Execution::Parallel);

// [x_k d_k + d_k x_k, sum_{j != i} x_ij (d_i d_j/alpha_ij) x_ij] - (i <-> k) = 0.
IdentityReport verify_dilation_identity(const Parameters& params, Execution exec = Execution::Parallel);

// [N_i, N_k] for the naive quantisation: nonzero and first order for n >= 3,
// zero for n = 2. Also compares against the first-order pattern and the
// symmetrised ordering.
IdentityReport verify_naive_noncommute(const Parameters& params, Execution exec = Execution::Parallel);

// [N_i, N_k] itself (normal form), for golden files.
DiffOp naive_commutator(std::size_t i, std::size_t k, const Parameters& params);

}  // namespace involution::ops
