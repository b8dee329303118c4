#include "involution/brackets.hpp"

#include "involution/errors.hpp"
#include "involution/random.hpp"

#include <fmt/core.h>

#include <cmath>
#include <exception>
#include <functional>

namespace involution {

namespace {

BracketValue bracket_of_gradients(const std::vector<double>& gf, const std::vector<double>& gg)
{
    const std::size_t n = gf.size() / 2;
    BracketValue out;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = gf[i] * gg[n + i];
        const double b = gf[n + i] * gg[i];
        out.value += a - b;
        out.scale += std::abs(a) + std::abs(b);
    }
    return out;
}

void check_same_arity(const Observable& f, const Observable& g)
{
    if (f.arity() != g.arity())
        throw ConfigError(fmt::format("bracket of observables with arity {} and {}", f.arity(), g.arity()));
}

}  // namespace

BracketValue poisson_with_scale(const Observable& f, const Observable& g, const PhasePoint& pt)
{
    check_same_arity(f, g);
    return bracket_of_gradients(grad(f, pt), grad(g, pt));
}

double poisson(const Observable& f, const Observable& g, const PhasePoint& pt)
{
    return poisson_with_scale(f, g, pt).value;
}

// ---------------------------------------------------------------------------

ConstraintPair ConstraintPair::sphere(std::size_t n)
{
    ConstraintPair c;
    c.kind_ = ConstraintKind::Sphere;
    c.n_ = n;
    c.weights_.assign(n, 1.0);
    c.phi_ = Observable::from_program(n, "phi_sphere", [n](auto x, auto) {
        using T = typename decltype(x)::value_type;
        T s(0.0);
        for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
        return T(0.5) * (s - T(1.0));
    });
    c.pi_ = Observable::from_program(n, "Pi_sphere", [n](auto x, auto p) {
        using T = typename decltype(x)::value_type;
        T s(0.0);
        for (std::size_t i = 0; i < n; ++i) s += x[i] * p[i];
        return s;
    });
    return c;
}

ConstraintPair ConstraintPair::ellipsoid(const Parameters& params)
{
    const std::size_t n = params.n();
    ConstraintPair c;
    c.kind_ = ConstraintKind::Ellipsoid;
    c.n_ = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (params.alpha_i(i) == 0.0) throw ConfigError("ellipsoid constraint needs nonzero alpha_i");
        c.weights_.push_back(1.0 / params.alpha_i(i));
    }
    const std::vector<double> w = c.weights_;
    c.phi_ = Observable::from_program(n, "phi_ellipsoid", [w](auto x, auto) {
        using T = typename decltype(x)::value_type;
        T s(0.0);
        for (std::size_t i = 0; i < w.size(); ++i) s += T(w[i]) * x[i] * x[i];
        return T(0.5) * (s - T(1.0));
    });
    c.pi_ = Observable::from_program(n, "Pi_ellipsoid", [w](auto x, auto p) {
        using T = typename decltype(x)::value_type;
        T s(0.0);
        for (std::size_t i = 0; i < w.size(); ++i) s += T(w[i]) * x[i] * p[i];
        return s;
    });
    return c;
}

std::vector<double> ConstraintPair::constraint_normal(const std::vector<double>& x) const
{
    std::vector<double> g(n_);
    for (std::size_t i = 0; i < n_; ++i) g[i] = weights_[i] * x[i];
    return g;
}

PhasePoint ConstraintPair::project(const PhasePoint& pt) const
{
    if (pt.n() != n_) throw ConfigError(fmt::format("constraint of dimension {} applied to point of dimension {}", n_, pt.n()));
    double form = 0.0;
    bool nonzero = false;
    for (std::size_t i = 0; i < n_; ++i) {
        form += weights_[i] * pt.x[i] * pt.x[i];
        nonzero = nonzero || pt.x[i] != 0.0;
    }
    if (!nonzero) throw DegeneratePoint("cannot project x = 0 onto the constraint surface");
    if (!(form > 0.0)) throw DegeneratePoint("quadratic constraint form is not positive at x");

    PhasePoint out = pt;
    const double scale = 1.0 / std::sqrt(form);
    for (auto& xi : out.x) xi *= scale;

    const std::vector<double> normal = constraint_normal(out.x);
    double along = 0.0;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        along += normal[i] * out.p[i];
        norm2 += normal[i] * normal[i];
    }
    const double c = along / norm2;
    for (std::size_t i = 0; i < n_; ++i) out.p[i] -= c * normal[i];
    return out;
}

std::string ConstraintPair::label() const
{
    return kind_ == ConstraintKind::Sphere ? "dirac-sphere" : "dirac-ellipsoid";
}

std::string BracketSpec::label() const
{
    return constraint ? constraint->label() : "poisson";
}

// ---------------------------------------------------------------------------

BracketValue dirac_with_scale(const Observable& f, const Observable& g, const ConstraintPair& c, const PhasePoint& pt)
{
    check_same_arity(f, g);
    check_same_arity(f, c.phi());
    const auto gf = grad(f, pt);
    const auto gg = grad(g, pt);
    const auto gphi = grad(c.phi(), pt);
    const auto gpi = grad(c.pi(), pt);

    const BracketValue j = bracket_of_gradients(gphi, gpi);
    if (std::abs(j.value) < 1e-12)
        throw SingularConstraint(fmt::format("|{{phi,Pi}}| = {:.3g} below 1e-12", std::abs(j.value)));

    const BracketValue fg = bracket_of_gradients(gf, gg);
    const BracketValue fphi = bracket_of_gradients(gf, gphi);
    const BracketValue pig = bracket_of_gradients(gpi, gg);
    const BracketValue fpi = bracket_of_gradients(gf, gpi);
    const BracketValue phig = bracket_of_gradients(gphi, gg);

    const double inv_j = 1.0 / j.value;
    BracketValue out;
    out.value = fg.value + fphi.value * inv_j * pig.value - fpi.value * inv_j * phig.value;
    out.scale = fg.scale + (fphi.scale * pig.scale + fpi.scale * phig.scale) * std::abs(inv_j);
    return out;
}

double dirac(const Observable& f, const Observable& g, const ConstraintPair& c, const PhasePoint& pt)
{
    return dirac_with_scale(f, g, c, pt).value;
}

// ---------------------------------------------------------------------------

namespace {

// d/dz_k of a scalar field at z, central differences with one Richardson step.
std::vector<double> richardson_gradient(const std::function<double(const PhasePoint&)>& field, const PhasePoint& pt,
                                        double step)
{
    const std::vector<double> z = pt.flat();
    std::vector<double> out(z.size());
    auto central = [&](std::size_t k, double s) {
        std::vector<double> plus = z, minus = z;
        plus[k] += s;
        minus[k] -= s;
        return (field(PhasePoint::from_flat(plus)) - field(PhasePoint::from_flat(minus))) / (2.0 * s);
    };
    for (std::size_t k = 0; k < z.size(); ++k) {
        const double coarse = central(k, step);
        const double fine = central(k, 0.5 * step);
        out[k] = (4.0 * fine - coarse) / 3.0;
    }
    return out;
}

}  // namespace

BracketValue jacobi_residual(const Observable& f, const Observable& g, const Observable& h, const PhasePoint& pt,
                             double step)
{
    check_same_arity(f, g);
    check_same_arity(f, h);
    auto outer = [&](const Observable& a, const Observable& b, const Observable& c) {
        auto inner = [&b, &c](const PhasePoint& q) { return poisson(b, c, q); };
        return bracket_of_gradients(grad(a, pt), richardson_gradient(inner, pt, step));
    };
    const BracketValue t1 = outer(f, g, h);
    const BracketValue t2 = outer(g, h, f);
    const BracketValue t3 = outer(h, f, g);
    return {t1.value + t2.value + t3.value, t1.scale + t2.scale + t3.scale};
}

// ---------------------------------------------------------------------------

std::vector<PhasePoint> verification_points(const BracketSpec& bracket, std::size_t n, std::size_t trials,
                                            std::uint64_t seed)
{
    std::vector<PhasePoint> pts = sample_points(seed, n, trials);
    if (bracket.constraint)
        for (auto& pt : pts) pt = bracket.constraint->project(pt);
    return pts;
}

namespace {

struct PairIndex {
    std::size_t i;
    std::size_t k;
};

std::vector<PairIndex> unordered_pairs(std::size_t m)
{
    std::vector<PairIndex> pairs;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = i + 1; k < m; ++k) pairs.push_back({i, k});
    return pairs;
}

std::size_t family_arity(const std::vector<Observable>& family)
{
    if (family.empty()) throw ConfigError("empty observable family");
    for (const auto& o : family)
        if (o.arity() != family.front().arity()) throw ConfigError("observable family has mixed arity");
    return family.front().arity();
}

BracketReport check_one(const std::vector<Observable>& family, const BracketSpec& bracket, const PairIndex& pair,
                        std::size_t trial, const PhasePoint& pt, double tol)
{
    BracketReport r;
    r.i = pair.i;
    r.k = pair.k;
    r.trial = trial;
    r.tolerance = tol;
    r.point = pt;
    try {
        const BracketValue b = bracket.constraint
                                   ? dirac_with_scale(family[pair.i], family[pair.k], *bracket.constraint, pt)
                                   : poisson_with_scale(family[pair.i], family[pair.k], pt);
        r.residual = b.value;
        r.scale = b.scale;
        r.passed = std::abs(b.value) <= tol * std::max(1.0, b.scale);
    } catch (const std::exception& e) {
        r.residual = std::nan("");
        r.passed = false;
        r.error = e.what();
    }
    return r;
}

}  // namespace

std::vector<BracketReport> verify_commuting_family_serial(const std::vector<Observable>& family,
                                                          const BracketSpec& bracket, std::size_t trials,
                                                          std::uint64_t seed, double tol)
{
    if (trials == 0) throw ConfigError("trials must be >= 1");
    const std::size_t n = family_arity(family);
    const auto points = verification_points(bracket, n, trials, seed);
    const auto pairs = unordered_pairs(family.size());

    std::vector<BracketReport> out;
    out.reserve(pairs.size() * trials);
    for (const auto& pair : pairs)
        for (std::size_t t = 0; t < trials; ++t) out.push_back(check_one(family, bracket, pair, t, points[t], tol));
    return out;
}

std::vector<BracketReport> verify_commuting_family(const std::vector<Observable>& family, const BracketSpec& bracket,
                                                   std::size_t trials, std::uint64_t seed, double tol)
{
    if (trials == 0) throw ConfigError("trials must be >= 1");
    const std::size_t n = family_arity(family);
    const auto points = verification_points(bracket, n, trials, seed);
    const auto pairs = unordered_pairs(family.size());

    const auto total = static_cast<std::int64_t>(pairs.size() * trials);
    std::vector<BracketReport> out(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(static)
    for (std::int64_t idx = 0; idx < total; ++idx) {
        const auto u = static_cast<std::size_t>(idx);
        const std::size_t pair = u / trials;
        const std::size_t t = u % trials;
        out[u] = check_one(family, bracket, pairs[pair], t, points[t], tol);
    }
    return out;
}

std::vector<PairSummary> summarize(const std::vector<BracketReport>& reports)
{
    std::vector<PairSummary> out;
    for (const auto& r : reports) {
        if (out.empty() || out.back().i != r.i || out.back().k != r.k) out.push_back({r.i, r.k});
        PairSummary& s = out.back();
        if (r.error.empty()) {
            s.worst_residual = std::max(s.worst_residual, std::abs(r.residual));
            s.worst_relative = std::max(s.worst_relative, std::abs(r.residual) / std::max(1.0, r.scale));
        }
        if (!r.passed) {
            ++s.failures;
            s.passed = false;
        }
    }
    return out;
}

}  // namespace involution
