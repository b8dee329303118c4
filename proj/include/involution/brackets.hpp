#pragma once

#include "involution/observable.hpp"
#include "involution/parameters.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace involution {

// Canonical bracket {f,g} = sum_i (df/dx_i dg/dp_i - df/dp_i dg/dx_i).
double poisson(const Observable& f, const Observable& g, const PhasePoint& pt);

// Bracket value together with sum_i (|df/dx_i dg/dp_i| + |df/dp_i dg/dx_i|),
// the magnitude of the terms that cancel in it.
struct BracketValue {
    double value = 0.0;
    double scale = 0.0;
};

BracketValue poisson_with_scale(const Observable& f, const Observable& g, const PhasePoint& pt);

enum class ConstraintKind { Sphere, Ellipsoid };

// Second-class pair (phi, Pi) with J = {phi, Pi}.
//   Sphere:    phi = (|x|^2 - 1)/2,              Pi = x.p,             J = |x|^2
//   Ellipsoid: phi = (sum x_i^2/alpha_i - 1)/2,  Pi = sum x_i p_i/alpha_i,  J = sum x_i^2/alpha_i^2
class ConstraintPair {
public:
    static ConstraintPair sphere(std::size_t n);
    static ConstraintPair ellipsoid(const Parameters& params);

    ConstraintKind kind() const { return kind_; }
    std::size_t n() const { return n_; }
    const Observable& phi() const { return phi_; }
    const Observable& pi() const { return pi_; }

    // Weights w_i of the quadratic form: phi = (sum w_i x_i^2 - 1)/2.
    const std::vector<double>& weights() const { return weights_; }

    // grad_x phi = (w_i x_i); the tangency condition is grad_x phi . p = 0.
    std::vector<double> constraint_normal(const std::vector<double>& x) const;

    // Radially rescales x onto phi = 0 and removes the component of p along
    // grad_x phi so that Pi = 0. Throws DegeneratePoint if x = 0 or the
    // quadratic form is not positive at x.
    PhasePoint project(const PhasePoint& pt) const;

    std::string label() const;

private:
    ConstraintKind kind_ = ConstraintKind::Sphere;
    std::size_t n_ = 0;
    std::vector<double> weights_;
    Observable phi_;
    Observable pi_;
};

// {f,g}_D = {f,g} + {f,phi}(1/J){Pi,g} - {f,Pi}(1/J){phi,g}, J = {phi,Pi}(pt).
// Throws SingularConstraint if |J| < 1e-12.
double dirac(const Observable& f, const Observable& g, const ConstraintPair& c, const PhasePoint& pt);
BracketValue dirac_with_scale(const Observable& f, const Observable& g, const ConstraintPair& c,
                              const PhasePoint& pt);

// Jacobi combination {f,{g,h}} + {g,{h,f}} + {h,{f,g}} at pt, with its
// magnitude scale. The outer bracket needs the gradient of an inner bracket
// value; it is taken by central differences with one Richardson step
// (step sizes s and s/2), which leaves an O(s^4) truncation error.
BracketValue jacobi_residual(const Observable& f, const Observable& g, const Observable& h,
                             const PhasePoint& pt, double step = 1e-3);

// Poisson bracket, or the Dirac bracket of a constraint pair.
struct BracketSpec {
    std::optional<ConstraintPair> constraint;

    static BracketSpec poisson() { return {}; }
    static BracketSpec dirac(ConstraintPair c) { return {std::move(c)}; }
    std::string label() const;
};

struct BracketReport {
    std::size_t i = 0;  // 0-based family indices, i < k
    std::size_t k = 0;
    std::size_t trial = 0;
    double residual = 0.0;
    double scale = 0.0;
    double tolerance = 0.0;
    PhasePoint point;
    bool passed = false;
    std::string error;  // non-empty when evaluation at this point failed
};

// Checks every unordered pair of `family` at `trials` seeded points (projected
// onto the constraint surface in Dirac mode). A pair passes at a point when
// |residual| <= tol * max(1, scale). Evaluation errors are recorded per point.
// Reports are ordered by (pair, trial) and do not depend on the thread count.
std::vector<BracketReport> verify_commuting_family(const std::vector<Observable>& family, const BracketSpec& bracket,
                                                   std::size_t trials, std::uint64_t seed, double tol);

// Single-threaded reference for the above; identical output.
std::vector<BracketReport> verify_commuting_family_serial(const std::vector<Observable>& family,
                                                          const BracketSpec& bracket, std::size_t trials,
                                                          std::uint64_t seed, double tol);

// Sample points used by the verifiers.
std::vector<PhasePoint> verification_points(const BracketSpec& bracket, std::size_t n, std::size_t trials,
                                            std::uint64_t seed);

struct PairSummary {
    std::size_t i = 0;
    std::size_t k = 0;
    // Worst values are over points that evaluated; evaluation errors count
    // only as failures.
    double worst_residual = 0.0;
    double worst_relative = 0.0;  // |residual| / max(1, scale)
    std::size_t failures = 0;
    bool passed = true;
};

std::vector<PairSummary> summarize(const std::vector<BracketReport>& reports);

}  // namespace involution
