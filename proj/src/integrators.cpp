#include "involution/integrators.hpp"

#include "involution/errors.hpp"
#include "involution/observables.hpp"

#include <Eigen/Dense>
#include <fmt/core.h>

#include <algorithm>
#include <cmath>

namespace involution::dyn {

namespace {

double inf_norm(const std::vector<double>& v)
{
    double m = 0.0;
    for (double e : v) m = std::max(m, std::abs(e));
    return m;
}

// F(z) = J grad H(z) = (dH/dp, -dH/dx)
std::vector<double> hamiltonian_field(const Observable& hamiltonian, const std::vector<double>& z)
{
    const std::vector<double> g = grad(hamiltonian, PhasePoint::from_flat(z));
    const std::size_t n = z.size() / 2;
    std::vector<double> f(z.size());
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = g[n + i];
        f[n + i] = -g[i];
    }
    return f;
}

std::vector<double> midpoint_defect(const Observable& hamiltonian, const std::vector<double>& z0,
                                    const std::vector<double>& z1, double h)
{
    std::vector<double> mid(z0.size());
    for (std::size_t k = 0; k < z0.size(); ++k) mid[k] = 0.5 * (z0[k] + z1[k]);
    const std::vector<double> f = hamiltonian_field(hamiltonian, mid);
    std::vector<double> defect(z0.size());
    for (std::size_t k = 0; k < z0.size(); ++k) defect[k] = z1[k] - z0[k] - h * f[k];
    return defect;
}

bool default_escape(const PhasePoint& pt)
{
    return inf_norm(pt.x) > 1e6 || inf_norm(pt.p) > 1e6;
}

}  // namespace

PhasePoint implicit_midpoint_step(const Observable& hamiltonian, const PhasePoint& z0pt, double h,
                                  const FlatOptions& opts)
{
    const std::vector<double> z0 = z0pt.flat();
    const std::size_t dim = z0.size();

    // Explicit Euler predictor, then fixed-point iteration.
    std::vector<double> z1 = z0;
    {
        const auto f = hamiltonian_field(hamiltonian, z0);
        for (std::size_t k = 0; k < dim; ++k) z1[k] += h * f[k];
    }
    for (int it = 0; it < opts.max_iterations; ++it) {
        const std::vector<double> defect = midpoint_defect(hamiltonian, z0, z1, h);
        const double scale = std::max(1.0, inf_norm(z1));
        if (inf_norm(defect) <= opts.tolerance * scale) return PhasePoint::from_flat(z1);
        for (std::size_t k = 0; k < dim; ++k) z1[k] -= defect[k];
        if (!std::all_of(z1.begin(), z1.end(), [](double v) { return std::isfinite(v); })) break;
    }

    // Newton fallback on G(z1) = z1 - z0 - h F((z0 + z1)/2), restarted from the
    // predictor. dG/dz1 = I - (h/2) DF, with DF by central differences.
    z1 = z0;
    for (int it = 0; it < opts.max_iterations; ++it) {
        const std::vector<double> defect = midpoint_defect(hamiltonian, z0, z1, h);
        const double scale = std::max(1.0, inf_norm(z1));
        if (inf_norm(defect) <= opts.tolerance * scale) return PhasePoint::from_flat(z1);

        std::vector<double> mid(dim);
        for (std::size_t k = 0; k < dim; ++k) mid[k] = 0.5 * (z0[k] + z1[k]);
        Eigen::MatrixXd jac = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (std::size_t c = 0; c < dim; ++c) {
            const double step = 1e-6 * std::max(1.0, std::abs(mid[c]));
            std::vector<double> plus = mid, minus = mid;
            plus[c] += step;
            minus[c] -= step;
            const auto fp = hamiltonian_field(hamiltonian, plus);
            const auto fm = hamiltonian_field(hamiltonian, minus);
            for (std::size_t r = 0; r < dim; ++r)
                jac(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) -= 0.5 * h * (fp[r] - fm[r]) / (2.0 * step);
        }
        Eigen::VectorXd rhs(static_cast<Eigen::Index>(dim));
        for (std::size_t k = 0; k < dim; ++k) rhs(static_cast<Eigen::Index>(k)) = defect[k];
        const Eigen::VectorXd delta = jac.partialPivLu().solve(rhs);
        for (std::size_t k = 0; k < dim; ++k) z1[k] -= delta(static_cast<Eigen::Index>(k));
        if (!std::all_of(z1.begin(), z1.end(), [](double v) { return std::isfinite(v); })) break;
    }
    throw NoConvergence(fmt::format("implicit midpoint step (h = {}) did not converge to {}", h, opts.tolerance));
}

Trajectory integrate_flat(const Observable& hamiltonian, const PhasePoint& start, double h, std::size_t steps,
                          const FlatOptions& opts)
{
    if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("step size must be finite and positive");
    if (start.n() != hamiltonian.arity()) throw ConfigError("start point dimension does not match the Hamiltonian");
    const auto escaped = opts.escaped ? opts.escaped : std::function<bool(const PhasePoint&)>(default_escape);

    Trajectory traj;
    traj.system = hamiltonian.name();
    traj.h = h;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(start);
    for (std::size_t s = 1; s <= steps; ++s) {
        PhasePoint next;
        try {
            next = implicit_midpoint_step(hamiltonian, traj.states.back(), h, opts);
        } catch (const IntegratorError& e) {
            throw NoConvergence(fmt::format("step {}: {}", s, e.what()));
        }
        traj.times.push_back(static_cast<double>(s) * h);
        traj.states.push_back(std::move(next));
        if (escaped(traj.states.back())) {
            traj.truncated = true;
            traj.note = fmt::format("escape detected at step {} (t = {})", s, traj.times.back());
            break;
        }
    }
    return traj;
}

// ---------------------------------------------------------------------------

ConstraintPair constraint_for(ConstrainedKind kind, const Parameters& params)
{
    return kind == ConstrainedKind::Sphere ? ConstraintPair::sphere(params.n()) : ConstraintPair::ellipsoid(params);
}

Observable hamiltonian_for(ConstrainedKind kind, const Parameters& params)
{
    return make_hamiltonian(kind == ConstrainedKind::Sphere ? HamiltonianKind::Neumann
                                                             : HamiltonianKind::EllipsoidGeodesic,
                            params);
}

PhasePoint project_to_surface(ConstrainedKind kind, const Parameters& params, const PhasePoint& pt)
{
    return constraint_for(kind, params).project(pt);
}

bool on_surface(ConstrainedKind kind, const Parameters& params, const PhasePoint& pt, double tol)
{
    const ConstraintPair c = constraint_for(kind, params);
    return std::abs(c.phi()(pt)) <= tol && std::abs(c.pi()(pt)) <= tol;
}

namespace {

struct RattleSystem {
    std::vector<double> weights;    // phi = (sum w_i x_i^2 - 1)/2
    std::vector<double> stiffness;  // V = sum k_i x_i^2 / 2 (empty for geodesics)

    std::vector<double> force(const std::vector<double>& x) const
    {
        std::vector<double> f(x.size(), 0.0);
        if (!stiffness.empty())
            for (std::size_t i = 0; i < x.size(); ++i) f[i] = -stiffness[i] * x[i];
        return f;
    }

    PhasePoint step(const PhasePoint& in, double h) const
    {
        const std::size_t n = in.n();
        const std::vector<double> f0 = force(in.x);

        // x1 = xt - c lambda v with v = grad phi(x0), c = h^2/2.
        std::vector<double> xt(n), v(n);
        for (std::size_t i = 0; i < n; ++i) {
            xt[i] = in.x[i] + h * (in.p[i] + 0.5 * h * f0[i]);
            v[i] = weights[i] * in.x[i];
        }
        double a = 0.0, b = 0.0, cc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            a += weights[i] * xt[i] * xt[i];
            b += weights[i] * xt[i] * v[i];
            cc += weights[i] * v[i] * v[i];
        }
        const double c = 0.5 * h * h;
        // c^2 C lambda^2 - 2 c B lambda + (A - 1) = 0; take the root that
        // vanishes with h, written without cancellation.
        const double disc = b * b - cc * (a - 1.0);
        if (!(disc >= 0.0) || cc == 0.0)
            throw ProjectionFailure("RATTLE position multiplier has no real solution");
        const double root = std::sqrt(disc);
        const double denom = c * (b >= 0.0 ? b + root : b - root);
        if (denom == 0.0) throw ProjectionFailure("RATTLE position multiplier is singular");
        const double lambda = (a - 1.0) / denom;

        PhasePoint out(n);
        std::vector<double> p_half(n);
        for (std::size_t i = 0; i < n; ++i) {
            p_half[i] = in.p[i] + 0.5 * h * (f0[i] - lambda * v[i]);
            out.x[i] = in.x[i] + h * p_half[i];
        }

        // p1 = p_half + (h/2)(f(x1) - mu grad phi(x1)) with grad phi(x1) . p1 = 0.
        const std::vector<double> f1 = force(out.x);
        double along = 0.0, norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            out.p[i] = p_half[i] + 0.5 * h * f1[i];
            const double ni = weights[i] * out.x[i];
            along += ni * out.p[i];
            norm2 += ni * ni;
        }
        if (norm2 == 0.0) throw ProjectionFailure("degenerate constraint normal");
        const double mu = along / norm2;
        for (std::size_t i = 0; i < n; ++i) out.p[i] -= mu * weights[i] * out.x[i];
        return out;
    }
};

}  // namespace

Trajectory integrate_constrained(ConstrainedKind kind, const Parameters& params, const PhasePoint& start, double h,
                                 std::size_t steps)
{
    if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("step size must be finite and positive");
    if (start.n() != params.n()) throw ConfigError("start point dimension does not match the parameters");
    if (!on_surface(kind, params, start, 1e-12))
        throw ConfigError("start point is off the constraint surface; project it first");

    const ConstraintPair constraint = constraint_for(kind, params);
    RattleSystem sys{constraint.weights(), {}};
    if (kind == ConstrainedKind::Sphere) sys.stiffness.assign(params.alphas().begin(), params.alphas().end());

    Trajectory traj;
    traj.system = kind == ConstrainedKind::Sphere ? "neumann" : "ellipsoid";
    traj.h = h;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(start);
    for (std::size_t s = 1; s <= steps; ++s) {
        try {
            traj.states.push_back(sys.step(traj.states.back(), h));
        } catch (const ProjectionFailure& e) {
            throw ProjectionFailure(fmt::format("step {}: {}", s, e.what()));
        }
        traj.times.push_back(static_cast<double>(s) * h);
    }
    return traj;
}

// ---------------------------------------------------------------------------

double DriftReport::max_relative_drift() const
{
    double m = 0.0;
    for (const auto& e : entries) m = std::max(m, e.relative_drift);
    return m;
}

DriftReport measure_drift(const Trajectory& traj, const std::vector<Observable>& observables,
                          const std::optional<ConstraintPair>& constraint)
{
    DriftReport report;
    if (traj.states.empty()) return report;
    for (const auto& obs : observables) {
        DriftEntry e;
        e.name = obs.name();
        e.initial = obs(traj.states.front());
        for (const auto& st : traj.states) e.max_abs_drift = std::max(e.max_abs_drift, std::abs(obs(st) - e.initial));
        e.relative_drift = e.max_abs_drift / std::max(1.0, std::abs(e.initial));
        report.entries.push_back(std::move(e));
    }
    if (constraint) {
        for (const auto& st : traj.states) {
            report.max_constraint_violation = std::max(report.max_constraint_violation, std::abs(constraint->phi()(st)));
            report.max_tangency_violation = std::max(report.max_tangency_violation, std::abs(constraint->pi()(st)));
        }
    }
    return report;
}

ConvergenceStudy step_halving_study(const std::function<Trajectory(double, std::size_t)>& run, double h,
                                    std::size_t steps, const std::vector<Observable>& observables,
                                    const std::optional<ConstraintPair>& constraint)
{
    ConvergenceStudy study;
    study.coarse = measure_drift(run(h, steps), observables, constraint);
    study.fine = measure_drift(run(0.5 * h, 2 * steps), observables, constraint);
    double worst_coarse = 0.0, worst_fine = 0.0;
    for (std::size_t k = 0; k < study.coarse.entries.size(); ++k) {
        const double c = study.coarse.entries[k].max_abs_drift;
        const double f = study.fine.entries[k].max_abs_drift;
        study.ratios.push_back(f > 0.0 ? c / f : 0.0);
        worst_coarse = std::max(worst_coarse, study.coarse.entries[k].relative_drift);
        worst_fine = std::max(worst_fine, study.fine.entries[k].relative_drift);
    }
    study.overall_ratio = worst_fine > 0.0 ? worst_coarse / worst_fine : 0.0;
    study.order_estimate = study.overall_ratio > 0.0 ? std::log2(study.overall_ratio) : 0.0;
    study.coarse.drift_ratio = study.overall_ratio;
    study.coarse.order_estimate = study.order_estimate;
    return study;
}

}  // namespace involution::dyn
