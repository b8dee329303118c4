#pragma once

#include "involution/observable.hpp"
#include "involution/parameters.hpp"

#include <utility>

namespace involution::dyn {

// Two-body quartic flow in relative coordinates: q = x2 - x1, P = p1 + p2
// (conserved), mu = alpha1 alpha2, energy E. q0 is q(t0); the sign of qdot(t0)
// picks the branch of qdot^2 = A q^4 - B q^2.
struct QuarticParams {
    double P = 2.0;
    double mu = 1.0;
    double E = -0.5;
    double q0 = 1.0;
    double t0 = 0.0;
    int qdot_sign = -1;
};

struct QuarticState {
    double q = 0.0;
    double qdot = 0.0;
    double qddot = 0.0;
};

// With u = 1/q the first integral becomes udot^2 + B u^2 = A, so u is a
// harmonic, hyperbolic or linear function of t - t0 and q blows up where u
// vanishes. A = P^2/(4 mu^2), B = 2E/mu.
class QuarticSolution {
public:
    // Throws ConfigError for mu = 0, q0 = 0 or an energy with no real qdot(t0).
    // Throws Error if the closed form fails its own substitution check.
    explicit QuarticSolution(const QuarticParams& qp);

    const QuarticParams& params() const { return qp_; }
    double A() const { return a_; }
    double B() const { return b_; }
    double qdot0() const { return qdot0_; }

    // Open interval of existence around t0; +-infinity where there is no escape.
    std::pair<double, double> interval() const { return {lower_, upper_}; }
    bool contains(double t) const { return t > lower_ && t < upper_; }

    // Throws OutOfDomain outside interval().
    QuarticState state(double t) const;
    double q(double t) const { return state(t).q; }

    // qddot - qdot^2/q - A q^3, relative to max(1, largest term).
    double second_order_residual(double t) const;
    // qdot^2 - A q^4 + B q^2, relative likewise.
    double first_order_residual(double t) const;

    // Phase point (x1, x2, p1, p2) at t0 with x1 = 0, x2 = q0.
    PhasePoint initial_point() const;

private:
    QuarticParams qp_;
    double a_ = 0.0, b_ = 0.0;
    double qdot0_ = 0.0;
    double u0_ = 0.0, udot0_ = 0.0;
    double lower_ = 0.0, upper_ = 0.0;
};

// Any distinct pair with alpha1 alpha2 = mu; the quartic Hamiltonian only sees mu.
Parameters quartic_parameters(double mu);

double quartic_exact(const QuarticParams& qp, double t);

}  // namespace involution::dyn
