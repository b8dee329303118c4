#include "involution/rational.hpp"

#include "involution/errors.hpp"

#include <cctype>
#include <string>

namespace involution {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational parse_decimal(std::string_view text)
{
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    long exponent = 0;
    if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
        std::string_view exp_part = s.substr(epos + 1);
        s = s.substr(0, epos);
        bool exp_negative = false;
        if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
            exp_negative = exp_part.front() == '-';
            exp_part.remove_prefix(1);
        }
        if (!all_digits(exp_part) || exp_part.size() > 6)
            throw ConfigError("malformed exponent in '" + std::string(text) + "'");
        exponent = std::stol(std::string(exp_part));
        if (exp_negative) exponent = -exponent;
    }

    std::string digits;
    long frac_len = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = s.substr(0, dot);
        std::string_view frac_part = s.substr(dot + 1);
        if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part))
            || (int_part.empty() && frac_part.empty()))
            throw ConfigError("malformed number '" + std::string(text) + "'");
        digits = std::string(int_part) + std::string(frac_part);
        frac_len = static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(s)) throw ConfigError("malformed number '" + std::string(text) + "'");
        digits = std::string(s);
    }

    mpz_class mantissa(digits, 10);
    long scale = exponent - frac_len;
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    Rational out = scale >= 0 ? Rational(mantissa * power) : Rational(mantissa, power);
    out.canonicalize();
    return negative ? Rational(-out) : out;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    if (text.empty()) throw ConfigError("empty rational literal");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        std::string_view num_digits = num;
        if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+'))
            num_digits.remove_prefix(1);
        if (!all_digits(num_digits) || !all_digits(den))
            throw ConfigError("malformed rational '" + std::string(text) + "'");
        mpz_class d(std::string(den), 10);
        if (d == 0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
        mpz_class n(std::string(num_digits), 10);
        if (num.front() == '-') n = -n;
        Rational r(n, d);
        r.canonicalize();
        return r;
    }
    return parse_decimal(text);
}

std::string to_string(const Rational& r)
{
    return r.get_str(10);
}

double to_double(const Rational& r)
{
    return r.get_d();
}

std::string to_string(const GaussianRational& z)
{
    if (z.is_real()) return to_string(z.real());
    Rational im_abs = abs(z.imag());
    std::string im = (im_abs == 1 ? std::string() : to_string(im_abs) + " ") + "i";
    if (sgn(z.real()) == 0) return (sgn(z.imag()) < 0 ? "-" : "") + im;
    return to_string(z.real()) + (sgn(z.imag()) < 0 ? " - " : " + ") + im;
}

}  // namespace involution
