#include "involution/operator_identities.hpp"

#include "involution/errors.hpp"
#include "involution/operator_algebra.hpp"

#include <fmt/core.h>

#include <array>
#include <exception>
#include <functional>

namespace involution::ops {

bool IdentityReport::passed() const
{
    for (const auto& c : checks)
        if (c.asserted && !c.passed) return false;
    return true;
}

std::size_t IdentityReport::asserted_count() const
{
    std::size_t count = 0;
    for (const auto& c : checks) count += c.asserted ? 1 : 0;
    return count;
}

std::optional<GaussianRational> proportionality(const DiffOp& a, const DiffOp& b)
{
    if (b.is_zero() || a.size() != b.size()) return std::nullopt;
    const auto& [key_a, ca] = *a.term_map().begin();
    const auto& [key_b, cb] = *b.term_map().begin();
    if (!(key_a == key_b)) return std::nullopt;
    // c = ca / cb
    Rational norm = cb.real() * cb.real() + cb.imag() * cb.imag();
    GaussianRational num = ca * cb.conj();
    Rational re = num.real() / norm;
    Rational im = num.imag() / norm;
    GaussianRational c(re, im);
    if (!(c * b == a)) return std::nullopt;
    return c;
}

namespace {

using Job = std::function<IdentityCheck()>;

std::vector<IdentityCheck> run_jobs(const std::vector<Job>& jobs, Execution exec)
{
    std::vector<IdentityCheck> out(jobs.size());
    const auto count = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic) if (exec == Execution::Parallel)
    for (std::int64_t idx = 0; idx < count; ++idx) {
        const auto u = static_cast<std::size_t>(idx);
        try {
            out[u] = jobs[u]();
        } catch (const std::exception& e) {
            out[u].passed = false;
            out[u].detail = std::string("error: ") + e.what();
        }
    }
    return out;
}

// Asserts lhs == rhs exactly; the residual is lhs - rhs.
IdentityCheck expect_equal(std::string id, const DiffOp& lhs, const DiffOp& rhs, bool asserted = true)
{
    const DiffOp residual = lhs - rhs;
    IdentityCheck c;
    c.id = std::move(id);
    c.term_count = residual.size();
    c.asserted = asserted;
    c.passed = residual.is_zero();
    if (!c.passed) c.detail = render(residual);
    return c;
}

int delta(std::size_t a, std::size_t b)
{
    return a == b ? 1 : 0;
}

GaussianRational as_coeff(int v)
{
    return GaussianRational(static_cast<long>(v));
}

std::string pair_label(std::size_t i, std::size_t j)
{
    return fmt::format("{}{}", i + 1, j + 1);
}

std::vector<std::vector<DiffOp>> lhat_table(std::size_t n)
{
    std::vector<std::vector<DiffOp>> table(n, std::vector<DiffOp>(n, DiffOp(n)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) table[i][j] = build_Lhat(i, j, n);
    return table;
}

}  // namespace

IdentityReport verify_soN(std::size_t n, Execution exec)
{
    if (n < 3) throw ConfigError("so(N) sweep needs n >= 3");
    const auto L = lhat_table(n);
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = k + 1; l < n; ++l)
                    jobs.push_back([&L, i, j, k, l] {
                        const DiffOp rhs = as_coeff(-delta(j, k)) * L[i][l] + as_coeff(delta(i, k)) * L[j][l]
                                           + as_coeff(delta(j, l)) * L[i][k] + as_coeff(-delta(i, l)) * L[j][k];
                        return expect_equal(fmt::format("[L{},L{}]", pair_label(i, j), pair_label(k, l)),
                                            commutator(L[i][j], L[k][l]), rhs);
                    });
    return {"son", run_jobs(jobs, exec), {}};
}

IdentityReport verify_aux_relations(std::size_t n, Execution exec)
{
    if (n < 2) throw ConfigError("auxiliary relations need n >= 2");
    const auto L = lhat_table(n);
    auto x = [n](std::size_t k) { return DiffOp::coordinate(n, k); };
    auto d = [n](std::size_t k) { return DiffOp::derivative(n, k); };
    auto inv_x = [n](std::size_t k) { return DiffOp::power(n, k, -1); };

    IdentityReport report{"aux", {}, {}};
    std::vector<Job> jobs;

    // [x_k d_k, L_ij] = (d_kj - d_ki)((d_i + d_j) rho_ij^2 + rho_ij^2 (d_i + d_j))
    auto euler_rhs = [&, n](std::size_t k, std::size_t i, std::size_t j) {
        const DiffOp r2 = rho_squared(i, j, n);
        const DiffOp s = d(i) + d(j);
        return as_coeff(delta(k, j) - delta(k, i)) * (s * r2 + r2 * s);
    };
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                jobs.push_back([&, k, i, j] {
                    return expect_equal(fmt::format("[x{0}d{0},L{1}]", k + 1, pair_label(i, j)),
                                        commutator(x(k) * d(k), L[i][j]), euler_rhs(k, i, j));
                });
            }

    // [L_ij, x_k] = 2 rho_ij^2 (d_ik - d_jk)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (i == j) continue;
                jobs.push_back([&, i, j, k] {
                    return expect_equal(fmt::format("[L{},x{}]", pair_label(i, j), k + 1), commutator(L[i][j], x(k)),
                                        as_coeff(2 * (delta(i, k) - delta(j, k))) * rho_squared(i, j, n));
                });
            }

    // [d_k, L_ij] = (1/4)(d_ki + d_kj)(x_k^{-1} L_ij + L_ij x_k^{-1})
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                jobs.push_back([&, k, i, j] {
                    Rational w(delta(k, i) + delta(k, j), 4);
                    w.canonicalize();
                    const DiffOp rhs = GaussianRational(w) * (inv_x(k) * L[i][j] + L[i][j] * inv_x(k));
                    return expect_equal(fmt::format("[d{},L{}]", k + 1, pair_label(i, j)), commutator(d(k), L[i][j]),
                                        rhs);
                });
            }

    // [L_ij, rho_kl^2] = d_ik rho_jl^2 + d_il rho_jk^2 - d_jk rho_il^2 - d_jl rho_ik^2
    auto rho_rhs = [n](std::size_t i, std::size_t j, std::size_t k, std::size_t l, const std::array<int, 3>& signs) {
        return as_coeff(delta(i, k)) * rho_squared(j, l, n) + as_coeff(signs[0] * delta(i, l)) * rho_squared(j, k, n)
               + as_coeff(signs[1] * delta(j, k)) * rho_squared(i, l, n)
               + as_coeff(signs[2] * delta(j, l)) * rho_squared(i, k, n);
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = k + 1; l < n; ++l) {
                    if (i == j) continue;
                    jobs.push_back([&, i, j, k, l] {
                        return expect_equal(fmt::format("[L{},rho{}^2]", pair_label(i, j), pair_label(k, l)),
                                            commutator(L[i][j], rho_squared(k, l, n)),
                                            rho_rhs(i, j, k, l, {1, -1, -1}));
                    });
                }

    report.checks = run_jobs(jobs, exec);

    // Which sign completions of the rho relation hold on the whole sweep.
    std::vector<std::string> holding;
    for (int mask = 0; mask < 8; ++mask) {
        const std::array<int, 3> signs{mask & 1 ? -1 : 1, mask & 2 ? -1 : 1, mask & 4 ? -1 : 1};
        bool all = true;
        for (std::size_t i = 0; i < n && all; ++i)
            for (std::size_t j = 0; j < n && all; ++j)
                for (std::size_t k = 0; k < n && all; ++k)
                    for (std::size_t l = k + 1; l < n && all; ++l) {
                        if (i == j) continue;
                        all = commutator(L[i][j], rho_squared(k, l, n)) == rho_rhs(i, j, k, l, signs);
                    }
        if (all)
            holding.push_back(fmt::format("d_ik rho_jl^2 {} d_il rho_jk^2 {} d_jk rho_il^2 {} d_jl rho_ik^2",
                                          signs[0] > 0 ? '+' : '-', signs[1] > 0 ? '+' : '-',
                                          signs[2] > 0 ? '+' : '-'));
    }
    if (holding.empty())
        report.notes.push_back("[L_ij, rho_kl^2]: no sign completion holds");
    for (const auto& h : holding) report.notes.push_back("[L_ij, rho_kl^2] = " + h);

    // Coefficient c with [x_k d_k, L_ij] = c (d_kj - d_ki)(...), and the same
    // relation with the symmetric x_k d_k + d_k x_k in place of x_k d_k.
    std::optional<GaussianRational> coefficient;
    bool consistent = true;
    bool symmetric_holds = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                const DiffOp lhs = commutator(x(k) * d(k), L[i][j]);
                const DiffOp rhs = euler_rhs(k, i, j);
                symmetric_holds = symmetric_holds && commutator(symmetric_euler(k, n), L[i][j]) == rhs;
                if (rhs.is_zero()) {
                    consistent = consistent && lhs.is_zero();
                    continue;
                }
                auto c = proportionality(lhs, rhs);
                if (!c || (coefficient && !(*coefficient == *c)))
                    consistent = false;
                else
                    coefficient = c;
            }
    if (consistent && coefficient)
        report.notes.push_back(fmt::format("[x_k d_k, L_ij] = ({}) (d_kj - d_ki)((d_i+d_j) rho_ij^2 + rho_ij^2 (d_i+d_j))",
                                           to_string(*coefficient)));
    else
        report.notes.push_back("[x_k d_k, L_ij] is not proportional to the printed right-hand side");
    report.notes.push_back(fmt::format("[x_k d_k + d_k x_k, L_ij] = (d_kj - d_ki)((d_i+d_j) rho_ij^2 + rho_ij^2 (d_i+d_j)): {}",
                                       symmetric_holds ? "holds" : "fails"));
    return report;
}

IdentityReport verify_hk(const Parameters& params, Execution exec)
{
    const std::size_t n = params.n();
    std::vector<DiffOp> H;
    for (std::size_t k = 0; k < n; ++k) H.push_back(build_Hhat(k, params));

    std::vector<Job> jobs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            jobs.push_back([&H, i, k, n] {
                return expect_equal(fmt::format("[H{},H{}]", i + 1, k + 1), commutator(H[i], H[k]), DiffOp(n));
            });

    const GaussianRational half_i_alpha(Rational(0), Rational(params.exact_alpha() / 2));
    jobs.push_back([&H, &half_i_alpha, n] {
        DiffOp sum(n), expected(n);
        for (std::size_t k = 0; k < n; ++k) {
            sum += H[k];
            expected -= half_i_alpha * symmetric_euler(k, n);
        }
        return expect_equal("sum_k H_k = -(i alpha/2) sum_k (x_k d_k + d_k x_k)", sum, expected);
    });
    for (std::size_t k = 0; k < n; ++k) {
        jobs.push_back([&H, &half_i_alpha, k, n] {
            const DiffOp alpha_free = H[k] + half_i_alpha * symmetric_euler(k, n);
            return expect_equal(fmt::format("H{}|alpha=0 formally symmetric", k + 1), alpha_free.formal_transpose(),
                                alpha_free);
        });
        jobs.push_back([&H, k] {
            return expect_equal(fmt::format("H{} formally self-adjoint", k + 1), H[k].formal_adjoint(), H[k]);
        });
    }

    IdentityReport report{"hk", run_jobs(jobs, exec), {}};
    if (sgn(params.exact_alpha()) == 0) {
        bool real = true;
        for (const auto& h : H) real = real && h.all_coefficients_real();
        report.checks.push_back({"alpha=0: real coefficients", 0, true, real, real ? "" : "imaginary coefficient found"});
    }
    return report;
}

IdentityReport verify_xpJ_symmetry(const Parameters& params, Execution exec)
{
    const std::size_t n = params.n();
    std::vector<DiffOp> tails, Q;
    for (std::size_t i = 0; i < n; ++i) {
        tails.push_back(build_angular_tail(i, params));
        Q.push_back(build_Jalpha_hat(i, params));
    }
    auto C = [&tails, n](std::size_t i, std::size_t k) {
        return commutator(DiffOp::coordinate(n, k) * DiffOp::derivative(n, k), tails[i]);
    };

    std::vector<Job> jobs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k) {
            jobs.push_back([&C, i, k] { return expect_equal(fmt::format("C{}{} = C{}{}", i + 1, k + 1, k + 1, i + 1), C(i, k), C(k, i)); });
            jobs.push_back([&Q, i, k, n] {
                return expect_equal(fmt::format("[Jhat{},Jhat{}]", i + 1, k + 1), commutator(Q[i], Q[k]), DiffOp(n));
            });
        }
    return {"xpj", run_jobs(jobs, exec), {}};
}

IdentityReport verify_dilation_identity(const Parameters& params, Execution exec)
{
    const std::size_t n = params.n();
    std::vector<DiffOp> D, M;
    for (std::size_t i = 0; i < n; ++i) {
        D.push_back(symmetric_euler(i, n));
        M.push_back(build_dilation_tail(i, params));
    }

    std::vector<Job> jobs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k) {
            jobs.push_back([&D, &M, i, k] {
                return expect_equal(fmt::format("[D{},M{}] - [D{},M{}]", k + 1, i + 1, i + 1, k + 1),
                                    commutator(D[k], M[i]), commutator(D[i], M[k]));
            });
            jobs.push_back([&D, &M, i, k, n] {
                // The single commutator alone, reported for contrast.
                IdentityCheck c = expect_equal(fmt::format("[D{},M{}] alone", k + 1, i + 1), commutator(D[k], M[i]),
                                               DiffOp(n), false);
                c.detail = c.passed ? "vanishes" : fmt::format("nonzero ({} terms)", c.term_count);
                return c;
            });
        }
    return {"dilation", run_jobs(jobs, exec), {}};
}

DiffOp naive_commutator(std::size_t i, std::size_t k, const Parameters& params)
{
    return commutator(build_naive(i, params), build_naive(k, params));
}

IdentityReport verify_naive_noncommute(const Parameters& params, Execution exec)
{
    const std::size_t n = params.n();
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k) {
            jobs.push_back([&params, i, k, n] {
                const DiffOp c = naive_commutator(i, k, params);
                IdentityCheck check;
                check.id = fmt::format("[N{},N{}]", i + 1, k + 1);
                check.term_count = c.size();
                if (n == 2) {
                    check.passed = c.is_zero();
                    check.detail = c.is_zero() ? "0 (no third index)" : render(c);
                } else {
                    check.id += " nonzero";
                    check.passed = !c.is_zero();
                    check.detail = c.is_zero() ? "0" : fmt::format("{} terms, order {}", c.size(), c.order());
                }
                return check;
            });
            if (n < 3) continue;
            jobs.push_back([&params, i, k] {
                const DiffOp c = naive_commutator(i, k, params);
                IdentityCheck check;
                check.id = fmt::format("[N{},N{}] first order", i + 1, k + 1);
                check.term_count = c.size();
                check.passed = c.order() == 1 && !c.has_constant_term();
                check.detail = check.passed ? render(c) : fmt::format("order {}: {}", c.order(), render(c));
                return check;
            });
            jobs.push_back([&params, i, k] {
                // d_ij^2 read as the product d_i d_j instead, i.e. the operators of the dilation identity.
                const DiffOp c = commutator(build_dilation_tail(i, params), build_dilation_tail(k, params));
                IdentityCheck check;
                check.id = fmt::format("[N{},N{}] product reading", i + 1, k + 1);
                check.asserted = false;
                check.term_count = c.size();
                check.passed = !c.is_zero();
                check.detail = c.is_zero() ? "commutes (0)" : render(c);
                return check;
            });
            if (n < 3) continue;
            jobs.push_back([&params, i, k] {
                const DiffOp c = naive_commutator(i, k, params);
                const DiffOp pattern = naive_obstruction_pattern(i, k, params);
                IdentityCheck check;
                check.id = fmt::format("[N{},N{}] vs first-order pattern", i + 1, k + 1);
                check.asserted = false;
                auto ratio = proportionality(c, pattern);
                check.passed = ratio.has_value();
                check.term_count = (c - pattern).size();
                check.detail = ratio ? "proportional, factor " + to_string(*ratio) : "not proportional; pattern = " + render(pattern);
                return check;
            });
            jobs.push_back([&params, i, k] {
                const DiffOp c = naive_commutator(i, k, params);
                const DiffOp sym = commutator(build_naive_symmetric(i, params), build_naive_symmetric(k, params));
                IdentityCheck check = expect_equal(fmt::format("[N{},N{}] symmetric ordering", i + 1, k + 1), sym, c, false);
                check.detail = check.passed ? "same commutator" : "differs: " + check.detail;
                return check;
            });
        }
    return {"naive", run_jobs(jobs, exec), {}};
}

}  // namespace involution::ops
