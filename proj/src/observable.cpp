#include "involution/observable.hpp"

#include <fmt/core.h>

namespace involution {

PhasePoint::PhasePoint(std::vector<double> x_, std::vector<double> p_) : x(std::move(x_)), p(std::move(p_))
{
    if (x.size() != p.size())
        throw ConfigError(fmt::format("phase point has dim(x)={} but dim(p)={}", x.size(), p.size()));
}

std::vector<double> PhasePoint::flat() const
{
    std::vector<double> z(x);
    z.insert(z.end(), p.begin(), p.end());
    return z;
}

PhasePoint PhasePoint::from_flat(std::span<const double> z)
{
    const std::size_t n = z.size() / 2;
    return {std::vector<double>(z.begin(), z.begin() + n), std::vector<double>(z.begin() + n, z.end())};
}

namespace {

void check_arity(const Observable& obs, const PhasePoint& pt)
{
    if (pt.n() != obs.arity())
        throw ConfigError(fmt::format("observable '{}' has arity {} but point has dimension {}", obs.name(),
                                      obs.arity(), pt.n()));
}

}  // namespace

double Observable::operator()(const PhasePoint& pt) const
{
    check_arity(*this, pt);
    return impl_->eval(pt.x, pt.p);
}

DualScalar Observable::eval_dual(const PhasePoint& pt) const
{
    check_arity(*this, pt);
    const std::size_t n = pt.n();
    const std::size_t dim = 2 * n;
    std::vector<DualScalar> x, p;
    x.reserve(n);
    p.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        x.push_back(DualScalar::variable(pt.x[i], dim, i));
        p.push_back(DualScalar::variable(pt.p[i], dim, n + i));
    }
    return impl_->eval_dual(x, p);
}

Observable Observable::renamed(std::string name) const
{
    auto impl = std::make_shared<Impl>(*impl_);
    impl->name = std::move(name);
    Observable o;
    o.impl_ = std::move(impl);
    return o;
}

std::pair<double, std::vector<double>> value_and_grad(const Observable& obs, const PhasePoint& pt)
{
    const DualScalar d = obs.eval_dual(pt);
    std::vector<double> g(2 * pt.n());
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = d.partial(k);
    return {d.value(), std::move(g)};
}

std::vector<double> grad(const Observable& obs, const PhasePoint& pt)
{
    return value_and_grad(obs, pt).second;
}

namespace {

template <typename Op>
Observable combine(const Observable& a, const Observable& b, const char* symbol, Op op)
{
    if (a.arity() != b.arity())
        throw ConfigError(fmt::format("cannot combine observables of arity {} and {}", a.arity(), b.arity()));
    return Observable::from_program(a.arity(), fmt::format("({}{}{})", a.name(), symbol, b.name()),
                                    [a, b, op](auto x, auto p) {
                                        using T = typename decltype(x)::value_type;
                                        return op(a.call<T>(x, p), b.call<T>(x, p));
                                    });
}

}  // namespace

Observable operator+(const Observable& a, const Observable& b)
{
    return combine(a, b, "+", [](auto u, auto v) { return u + v; });
}

Observable operator-(const Observable& a, const Observable& b)
{
    return combine(a, b, "-", [](auto u, auto v) { return u - v; });
}

Observable operator*(const Observable& a, const Observable& b)
{
    return combine(a, b, "*", [](auto u, auto v) { return u * v; });
}

Observable operator*(double c, const Observable& a)
{
    return Observable::from_program(a.arity(), fmt::format("{}*{}", c, a.name()), [a, c](auto x, auto p) {
        using T = typename decltype(x)::value_type;
        return T(c) * a.call<T>(x, p);
    });
}

Observable coordinate(std::size_t n, std::size_t i)
{
    return Observable::from_program(n, fmt::format("x{}", i + 1), [i](auto x, auto) { return x[i]; });
}

Observable momentum(std::size_t n, std::size_t i)
{
    return Observable::from_program(n, fmt::format("p{}", i + 1), [i](auto, auto p) { return p[i]; });
}

Observable constant(std::size_t n, double c)
{
    return Observable::from_program(n, fmt::format("{}", c), [c](auto x, auto) {
        using T = typename decltype(x)::value_type;
        return T(c);
    });
}

}  // namespace involution
