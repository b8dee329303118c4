#pragma once

#include "involution/errors.hpp"
#include "involution/parameters.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

namespace involution {

// Forward-mode dual number carrying the value and all 2N first partials
// (d/dx_1..d/dx_N, d/dp_1..d/dp_N). Partials live inline; `dim` says how
// many are in use.
class DualScalar {
public:
    static constexpr std::size_t kMaxPartials = 2 * kMaxCoordinates;

    DualScalar() = default;
    DualScalar(double value) : value_(value) {}  // NOLINT: constants promote

    static DualScalar variable(double value, std::size_t dim, std::size_t index)
    {
        DualScalar d(value);
        d.dim_ = dim;
        d.partials_[index] = 1.0;
        return d;
    }

    double value() const { return value_; }
    double partial(std::size_t k) const { return partials_[k]; }
    std::size_t dim() const { return dim_; }

    DualScalar& operator+=(const DualScalar& o)
    {
        widen(o.dim_);
        value_ += o.value_;
        for (std::size_t k = 0; k < o.dim_; ++k) partials_[k] += o.partials_[k];
        return *this;
    }
    DualScalar& operator-=(const DualScalar& o)
    {
        widen(o.dim_);
        value_ -= o.value_;
        for (std::size_t k = 0; k < o.dim_; ++k) partials_[k] -= o.partials_[k];
        return *this;
    }
    DualScalar& operator*=(const DualScalar& o)
    {
        widen(o.dim_);
        for (std::size_t k = 0; k < dim_; ++k) partials_[k] = partials_[k] * o.value_ + value_ * o.partials_[k];
        value_ *= o.value_;
        return *this;
    }
    DualScalar& operator/=(const DualScalar& o)
    {
        widen(o.dim_);
        const double inv = 1.0 / o.value_;
        const double q = value_ * inv;
        for (std::size_t k = 0; k < dim_; ++k) partials_[k] = (partials_[k] - q * o.partials_[k]) * inv;
        value_ = q;
        return *this;
    }

    friend DualScalar operator+(DualScalar a, const DualScalar& b) { return a += b; }
    friend DualScalar operator-(DualScalar a, const DualScalar& b) { return a -= b; }
    friend DualScalar operator*(DualScalar a, const DualScalar& b) { return a *= b; }
    friend DualScalar operator/(DualScalar a, const DualScalar& b) { return a /= b; }
    friend DualScalar operator-(DualScalar a)
    {
        a.value_ = -a.value_;
        for (std::size_t k = 0; k < a.dim_; ++k) a.partials_[k] = -a.partials_[k];
        return a;
    }

    // f^q for f > 0: d(f^q) = q f^(q-1) df.
    friend DualScalar pow(const DualScalar& f, double q)
    {
        DualScalar out = f;
        const double fq = std::pow(f.value_, q);
        const double scale = q * fq / f.value_;
        out.value_ = fq;
        for (std::size_t k = 0; k < out.dim_; ++k) out.partials_[k] *= scale;
        return out;
    }

    friend DualScalar sqrt(const DualScalar& f)
    {
        DualScalar out = f;
        out.value_ = std::sqrt(f.value_);
        const double scale = 0.5 / out.value_;
        for (std::size_t k = 0; k < out.dim_; ++k) out.partials_[k] *= scale;
        return out;
    }

private:
    void widen(std::size_t other)
    {
        if (other > dim_) dim_ = other;
    }

    double value_ = 0.0;
    std::size_t dim_ = 0;
    std::array<double, kMaxPartials> partials_{};
};

inline double value_of(double v) { return v; }
inline double value_of(const DualScalar& v) { return v.value(); }

// Fractional power restricted to a positive base, for either scalar type.
template <typename T>
T positive_pow(const T& base, double exponent, const char* what = "fractional power")
{
    if (!(value_of(base) > 0.0)) throw DomainError(std::string(what) + " of non-positive argument");
    using std::pow;
    return pow(base, exponent);
}

template <typename T>
T positive_sqrt(const T& base, const char* what = "square root")
{
    if (!(value_of(base) > 0.0)) throw DomainError(std::string(what) + " of non-positive argument");
    using std::sqrt;
    return sqrt(base);
}

}  // namespace involution
