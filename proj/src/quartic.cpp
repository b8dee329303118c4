#include "involution/quartic.hpp"

#include "involution/errors.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace involution::dyn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// C(tau), S(tau) with C'' = -B C, C(0) = 1, C'(0) = 0, S(0) = 0, S'(0) = 1,
// and their derivatives.
struct Basis {
    double c, s, dc, ds;
};

Basis basis(double b, double tau)
{
    if (b > 0.0) {
        const double k = std::sqrt(b);
        return {std::cos(k * tau), std::sin(k * tau) / k, -k * std::sin(k * tau), std::cos(k * tau)};
    }
    if (b < 0.0) {
        const double k = std::sqrt(-b);
        return {std::cosh(k * tau), std::sinh(k * tau) / k, k * std::sinh(k * tau), std::cosh(k * tau)};
    }
    return {1.0, tau, 0.0, 1.0};
}

}  // namespace

QuarticSolution::QuarticSolution(const QuarticParams& qp) : qp_(qp)
{
    if (qp.mu == 0.0 || !std::isfinite(qp.mu)) throw ConfigError("quartic flow needs mu != 0");
    if (qp.q0 == 0.0 || !std::isfinite(qp.q0)) throw ConfigError("quartic flow needs q0 != 0");
    a_ = qp.P * qp.P / (4.0 * qp.mu * qp.mu);
    b_ = 2.0 * qp.E / qp.mu;
    const double q2 = qp.q0 * qp.q0;
    const double v2 = a_ * q2 * q2 - b_ * q2;
    if (v2 < 0.0)
        throw ConfigError(fmt::format("no real initial velocity: A q0^4 - B q0^2 = {} < 0", v2));
    qdot0_ = (qp.qdot_sign < 0 ? -1.0 : 1.0) * std::sqrt(v2);
    u0_ = 1.0 / qp.q0;
    udot0_ = -qdot0_ / q2;

    // Zeros of u(tau) = u0 C + udot0 S nearest to tau = 0 on either side.
    double fwd = kInf, bwd = -kInf;
    if (b_ > 0.0) {
        const double k = std::sqrt(b_);
        const double theta = std::atan2(udot0_ / k, u0_);  // u = R cos(k tau - theta)
        const double pi = std::numbers::pi;
        // k tau = theta + pi/2 + m pi
        const double base = theta + pi / 2;
        const double m = std::floor(-base / pi) + 1.0;  // smallest m with base + m pi > 0
        fwd = (base + m * pi) / k;
        bwd = (base + (m - 1.0) * pi) / k;
    } else if (b_ < 0.0) {
        const double k = std::sqrt(-b_);
        if (udot0_ != 0.0) {
            const double r = -u0_ * k / udot0_;
            if (std::abs(r) < 1.0) {
                const double tau = std::atanh(r) / k;
                (tau > 0.0 ? fwd : bwd) = tau;
            }
        }
    } else if (udot0_ != 0.0) {
        const double tau = -u0_ / udot0_;
        (tau > 0.0 ? fwd : bwd) = tau;
    }
    lower_ = qp.t0 + bwd;
    upper_ = qp.t0 + fwd;

    // Substitution check before the formula is trusted.
    const double span_hi = std::isfinite(upper_) ? qp.t0 + 0.9 * (upper_ - qp.t0) : qp.t0 + 1.0;
    const double span_lo = std::isfinite(lower_) ? qp.t0 + 0.9 * (lower_ - qp.t0) : qp.t0 - 1.0;
    for (int k = 0; k <= 16; ++k) {
        const double t = span_lo + (span_hi - span_lo) * k / 16.0;
        const double r2 = second_order_residual(t);
        const double r1 = first_order_residual(t);
        if (!(std::abs(r2) <= 1e-9) || !(std::abs(r1) <= 1e-9))
            throw Error(fmt::format("quartic closed form fails substitution at t = {}: {}, {}", t, r1, r2));
    }
}

QuarticState QuarticSolution::state(double t) const
{
    if (!contains(t))
        throw OutOfDomain(fmt::format("t = {} outside the existence interval ({}, {})", t, lower_, upper_));
    const Basis bs = basis(b_, t - qp_.t0);
    const double u = u0_ * bs.c + udot0_ * bs.s;
    const double ud = u0_ * bs.dc + udot0_ * bs.ds;
    const double udd = -b_ * u;
    QuarticState st;
    st.q = 1.0 / u;
    st.qdot = -ud / (u * u);
    st.qddot = -udd / (u * u) + 2.0 * ud * ud / (u * u * u);
    return st;
}

double QuarticSolution::second_order_residual(double t) const
{
    const QuarticState s = state(t);
    const double t1 = s.qdot * s.qdot / s.q;
    const double t2 = a_ * s.q * s.q * s.q;
    const double scale = std::max({1.0, std::abs(s.qddot), std::abs(t1), std::abs(t2)});
    return (s.qddot - t1 - t2) / scale;
}

double QuarticSolution::first_order_residual(double t) const
{
    const QuarticState s = state(t);
    const double q2 = s.q * s.q;
    const double t0 = s.qdot * s.qdot;
    const double t1 = a_ * q2 * q2;
    const double t2 = b_ * q2;
    const double scale = std::max({1.0, std::abs(t0), std::abs(t1), std::abs(t2)});
    return (t0 - t1 + t2) / scale;
}

PhasePoint QuarticSolution::initial_point() const
{
    // qdot = dH/dp2 - dH/dp1 = -p q^2/mu for the relative momentum p.
    const double p = -qp_.mu * qdot0_ / (qp_.q0 * qp_.q0);
    PhasePoint pt(2);
    pt.x = {0.0, qp_.q0};
    pt.p = {qp_.P / 2 - p, qp_.P / 2 + p};
    return pt;
}

Parameters quartic_parameters(double mu)
{
    if (mu == 0.0 || !std::isfinite(mu)) throw ConfigError("quartic flow needs mu != 0");
    if (mu == 4.0) return make_parameters(std::vector<double>{1.0, 4.0});
    return make_parameters(std::vector<double>{2.0, mu / 2.0});
}

double quartic_exact(const QuarticParams& qp, double t)
{
    return QuarticSolution(qp).q(t);
}

}  // namespace involution::dyn
