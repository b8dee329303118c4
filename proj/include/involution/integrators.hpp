#pragma once

#include "involution/brackets.hpp"
#include "involution/observable.hpp"
#include "involution/parameters.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace involution::dyn {

struct Trajectory {
    std::string system;
    double h = 0.0;
    std::vector<double> times;
    std::vector<PhasePoint> states;
    bool truncated = false;  // stopped early on escape
    std::string note;

    std::size_t n() const { return states.empty() ? 0 : states.front().n(); }
};

struct FlatOptions {
    double tolerance = 1e-13;  // on |z_{n+1} - z_n - h F(midpoint)|_inf / max(1, |z_{n+1}|_inf)
    int max_iterations = 50;
    // Integration stops (truncated = true) once this returns true for a state.
    // Defaults to max |z_i| > 1e6.
    std::function<bool(const PhasePoint&)> escaped;
};

// One implicit-midpoint step z1 = z0 + h J grad H((z0 + z1)/2). Fixed-point
// iteration first; Newton with a finite-difference Hessian if that stalls.
// Throws NoConvergence.
PhasePoint implicit_midpoint_step(const Observable& hamiltonian, const PhasePoint& z0, double h,
                                  const FlatOptions& opts = {});

// Hamilton's equations for an unconstrained Hamiltonian, h > 0. Run backwards
// by flipping the momenta.
Trajectory integrate_flat(const Observable& hamiltonian, const PhasePoint& start, double h, std::size_t steps,
                          const FlatOptions& opts = {});

// Sphere: Neumann problem, H = |p|^2/2 + sum alpha_i x_i^2/2 on |x| = 1.
// Ellipsoid: geodesic flow, H = |p|^2/2 on sum x_i^2/alpha_i = 1.
enum class ConstrainedKind { Sphere, Ellipsoid };

ConstraintPair constraint_for(ConstrainedKind kind, const Parameters& params);
Observable hamiltonian_for(ConstrainedKind kind, const Parameters& params);

// Rescales x onto phi = 0 and removes the normal component of p. Throws
// DegeneratePoint for x = 0.
PhasePoint project_to_surface(ConstrainedKind kind, const Parameters& params, const PhasePoint& pt);

// True if |phi| and |Pi| are both within tol at pt.
bool on_surface(ConstrainedKind kind, const Parameters& params, const PhasePoint& pt, double tol = 1e-12);

// RATTLE for a single quadratic holonomic constraint. The position multiplier
// solves a scalar quadratic; the momentum multiplier restores tangency.
// Throws ConfigError if `start` is off the surface, ProjectionFailure if the
// position multiplier has no real solution.
Trajectory integrate_constrained(ConstrainedKind kind, const Parameters& params, const PhasePoint& start, double h,
                                 std::size_t steps);

struct DriftEntry {
    std::string name;
    double initial = 0.0;
    double max_abs_drift = 0.0;
    double relative_drift = 0.0;  // max_abs_drift / max(1, |initial|)
};

struct DriftReport {
    std::vector<DriftEntry> entries;
    double max_constraint_violation = 0.0;  // max |phi| (constrained runs)
    double max_tangency_violation = 0.0;    // max |Pi|
    std::optional<double> order_estimate;   // from a step-halving study
    std::optional<double> drift_ratio;

    double max_relative_drift() const;
};

DriftReport measure_drift(const Trajectory& traj, const std::vector<Observable>& observables,
                          const std::optional<ConstraintPair>& constraint = std::nullopt);

// Per-observable ratio drift(h) / drift(h/2) over the same time span.
struct ConvergenceStudy {
    DriftReport coarse;
    DriftReport fine;
    std::vector<double> ratios;  // aligned with coarse.entries
    double overall_ratio = 0.0;  // ratio of the largest drifts
    double order_estimate = 0.0; // log2(overall_ratio)
};

// `run(h, steps)` integrates one trajectory; the study calls it with (h, steps)
// and (h/2, 2 steps).
ConvergenceStudy step_halving_study(const std::function<Trajectory(double, std::size_t)>& run, double h,
                                    std::size_t steps, const std::vector<Observable>& observables,
                                    const std::optional<ConstraintPair>& constraint = std::nullopt);

}  // namespace involution::dyn
