#ifndef ENGEL_RATIONAL_HPP
#define ENGEL_RATIONAL_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace engel {

using Integer = mpz_class;

// Canonical GMP rational: denominator > 0 and gcd(|num|, den) = 1 after every
// arithmetic operation. Values built from raw parts go through make_rational.
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

namespace detail {

inline bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}

inline Integer parse_integer(std::string_view s)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    }
    Integer z(std::string(s), 10);
    return negative ? Integer(-z) : z;
}

inline Integer pow10(unsigned long e)
{
    Integer z;
    mpz_ui_pow_ui(z.get_mpz_t(), 10, e);
    return z;
}

} // namespace detail

/// Parses "p/q", an integer, or a plain decimal such as "0.125" or "-2.5e-3"
/// into an exact rational. Decimals are read digit for digit, never through
/// floating point.
inline Rational parse_rational(std::string_view text)
{
    const std::string original(text);
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("not an exact rational: '" + original + "'");
    };
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        return fail();
    }

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view den_text = text.substr(slash + 1);
        if (!detail::all_digits(den_text)) {
            return fail();
        }
        try {
            Integer num = detail::parse_integer(text.substr(0, slash));
            Integer den(std::string(den_text), 10);
            if (den == 0) {
                return fail();
            }
            return make_rational(num, den);
        } catch (const std::invalid_argument&) {
            return fail();
        }
    }

    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = text.substr(e + 1);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        if (!detail::all_digits(exp_text) || exp_text.size() > 6) {
            return fail();
        }
        exponent = std::stol(std::string(exp_text));
        if (exp_negative) {
            exponent = -exponent;
        }
        text = text.substr(0, e);
    }

    std::string_view int_part = text;
    std::string_view frac_part;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        int_part = text.substr(0, dot);
        frac_part = text.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) {
        return fail();
    }
    if ((!int_part.empty() && !detail::all_digits(int_part)) ||
        (!frac_part.empty() && !detail::all_digits(frac_part))) {
        return fail();
    }

    std::string digits = std::string(int_part) + std::string(frac_part);
    Integer num(digits, 10);
    if (negative) {
        num = -num;
    }
    exponent -= static_cast<long>(frac_part.size());
    if (exponent >= 0) {
        return make_rational(num * detail::pow10(static_cast<unsigned long>(exponent)), 1);
    }
    return make_rational(num, detail::pow10(static_cast<unsigned long>(-exponent)));
}

/// Always "p/q", including integers ("3/1") and zero ("0/1").
inline std::string to_string(const Rational& r)
{
    return r.get_num().get_str(10) + "/" + r.get_den().get_str(10);
}

inline std::string to_string(const Integer& z)
{
    return z.get_str(10);
}

inline Integer floor(const Rational& r)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Integer ceil(const Rational& r)
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

/// Exact ceil(a / b) for b > 0.
inline Integer ceil_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Rational pow(const Rational& base, unsigned long exponent)
{
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    r.canonicalize();
    return r;
}

// Natural logarithms of exact values. The top 64 bits of the integer are
// converted to long double (64-bit mantissa on x86) and the remaining binary
// exponent is added back, so arbitrarily large operands keep full precision.
inline long double log(const Integer& z)
{
    if (z <= 0) {
        throw std::domain_error("logarithm of a non-positive integer");
    }
    constexpr long double ln2 = 0.693147180559945309417232121458176568L;
    const std::size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
    if (bits <= 64) {
        const std::uint64_t v = mpz_getlimbn(z.get_mpz_t(), 0);
        return std::log(static_cast<long double>(v));
    }
    const std::size_t shift = bits - 64;
    Integer top;
    mpz_tdiv_q_2exp(top.get_mpz_t(), z.get_mpz_t(), shift);
    const std::uint64_t v = mpz_getlimbn(top.get_mpz_t(), 0);
    return std::log(static_cast<long double>(v)) + static_cast<long double>(shift) * ln2;
}

inline long double log(const Rational& r)
{
    if (r <= 0) {
        throw std::domain_error("logarithm of a non-positive rational");
    }
    return log(r.get_num()) - log(r.get_den());
}

/// Number of decimal digits needed to write the rational as "p/q".
inline std::size_t decimal_size(const Rational& r)
{
    return mpz_sizeinbase(r.get_num_mpz_t(), 10) + mpz_sizeinbase(r.get_den_mpz_t(), 10);
}

} // namespace engel

#endif
