#pragma once

#include "involution/dual.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace involution {

// A point (x, p) of the 2N-dimensional phase space.
struct PhasePoint {
    std::vector<double> x;
    std::vector<double> p;

    PhasePoint() = default;
    PhasePoint(std::vector<double> x_, std::vector<double> p_);
    explicit PhasePoint(std::size_t n) : x(n, 0.0), p(n, 0.0) {}

    std::size_t n() const { return x.size(); }

    // (x_1..x_N, p_1..p_N)
    std::vector<double> flat() const;
    static PhasePoint from_flat(std::span<const double> z);
};

// Phase-space function. The evaluation program is written once, generically
// over the scalar type, and instantiated for double (values) and DualScalar
// (exact gradients).
class Observable {
public:
    template <typename T>
    using Program = std::function<T(std::span<const T> x, std::span<const T> p)>;

    Observable() = default;

    // `program` must be callable as program(span<const T> x, span<const T> p)
    // for T in {double, DualScalar}.
    template <typename F>
    static Observable from_program(std::size_t arity, std::string name, F program)
    {
        Observable o;
        auto impl = std::make_shared<Impl>();
        impl->arity = arity;
        impl->name = std::move(name);
        impl->eval = [program](std::span<const double> x, std::span<const double> p) { return program(x, p); };
        impl->eval_dual = [program](std::span<const DualScalar> x, std::span<const DualScalar> p) {
            return program(x, p);
        };
        o.impl_ = std::move(impl);
        return o;
    }

    std::size_t arity() const { return impl_->arity; }
    const std::string& name() const { return impl_->name; }

    double operator()(const PhasePoint& pt) const;
    DualScalar eval_dual(const PhasePoint& pt) const;

    // Direct access to the program, for composing observables.
    template <typename T>
    T call(std::span<const T> x, std::span<const T> p) const
    {
        if constexpr (std::is_same_v<T, double>)
            return impl_->eval(x, p);
        else
            return impl_->eval_dual(x, p);
    }

    // Renamed copy sharing the same program.
    Observable renamed(std::string name) const;

private:
    struct Impl {
        std::size_t arity = 0;
        std::string name;
        Program<double> eval;
        Program<DualScalar> eval_dual;
    };
    std::shared_ptr<const Impl> impl_;
};

// Exact gradient (d/dx_1..d/dx_N, d/dp_1..d/dp_N) of the evaluation program.
std::vector<double> grad(const Observable& obs, const PhasePoint& pt);

// Value and gradient from a single dual evaluation.
std::pair<double, std::vector<double>> value_and_grad(const Observable& obs, const PhasePoint& pt);

// Pointwise algebra on observables.
Observable operator+(const Observable& a, const Observable& b);
Observable operator-(const Observable& a, const Observable& b);
Observable operator*(const Observable& a, const Observable& b);
Observable operator*(double c, const Observable& a);

// Coordinate and momentum observables x_i, p_i (0-based index).
Observable coordinate(std::size_t n, std::size_t i);
Observable momentum(std::size_t n, std::size_t i);
Observable constant(std::size_t n, double c);

}  // namespace involution
