#ifndef ENGEL_EXPANSION_HPP
#define ENGEL_EXPANSION_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "interval.hpp"
#include "rational.hpp"

namespace engel {

/// True iff the list is non-empty and 2 <= d_1 <= d_2 <= ... <= d_n.
/// These are exactly the digit prefixes realised by some x in (0,1).
inline bool is_admissible(std::span<const Integer> digits)
{
    if (digits.empty() || digits.front() < 2) {
        return false;
    }
    for (std::size_t k = 1; k < digits.size(); ++k) {
        if (digits[k] < digits[k - 1]) {
            return false;
        }
    }
    return true;
}

/// A finite admissible digit sequence. Construction validates admissibility,
/// so every DigitWord in circulation is a legal Engel prefix.
class DigitWord {
public:
    explicit DigitWord(std::vector<Integer> digits) : digits_{std::move(digits)}
    {
        if (!is_admissible(digits_)) {
            throw invalid_word("digit word is not admissible (need 2 <= d_1 <= ... <= d_n)");
        }
    }

    DigitWord(std::initializer_list<long> digits)
        : DigitWord(std::vector<Integer>(digits.begin(), digits.end())) {}

    std::size_t size() const noexcept { return digits_.size(); }
    const Integer& operator[](std::size_t k) const { return digits_[k]; }
    const Integer& back() const { return digits_.back(); }
    std::span<const Integer> digits() const noexcept { return digits_; }

    /// Appends j; j must be >= the current last digit.
    DigitWord extended(const Integer& j) const
    {
        std::vector<Integer> next = digits_;
        next.push_back(j);
        return DigitWord(std::move(next));
    }

    DigitWord prefix(std::size_t n) const
    {
        if (n == 0 || n > digits_.size()) {
            throw std::out_of_range("prefix length out of range");
        }
        return DigitWord(std::vector<Integer>(digits_.begin(), digits_.begin() + static_cast<std::ptrdiff_t>(n)));
    }

    bool has_prefix(const DigitWord& w) const
    {
        if (w.size() > size()) {
            return false;
        }
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (digits_[k] != w.digits_[k]) {
                return false;
            }
        }
        return true;
    }

    /// sigma_1 * ... * sigma_n
    Integer product() const
    {
        Integer p = 1;
        for (const auto& d : digits_) {
            p *= d;
        }
        return p;
    }

    friend bool operator==(const DigitWord& a, const DigitWord& b) { return a.digits_ == b.digits_; }

private:
    std::vector<Integer> digits_;
};

inline std::string to_string(const DigitWord& w)
{
    std::string out = "[";
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k != 0) {
            out += ",";
        }
        out += w[k].get_str(10);
    }
    return out + "]";
}

struct ExpansionResult {
    DigitWord digits;
    bool terminated;    // some T^k(x) hit 0 within the requested depth
    Rational remainder; // T^n(x) after the last extracted digit
};

inline void require_unit_interval(const Rational& x, bool allow_zero)
{
    if (x >= 1 || x < 0 || (!allow_zero && x == 0)) {
        throw std::domain_error("argument " + to_string(x) + " outside " + (allow_zero ? "[0,1)" : "(0,1)"));
    }
}

/// The Engel map T(x) = x * ceil(1/x) - 1, with T(0) = 0.
inline Rational engel_map(const Rational& x)
{
    require_unit_interval(x, true);
    if (x == 0) {
        return Rational(0);
    }
    const Integer d = ceil_div(x.get_den(), x.get_num());
    return make_rational(x.get_num() * d - x.get_den(), x.get_den());
}

/// Extracts up to max_depth Engel digits of x, stopping early when the orbit
/// reaches 0.
///
/// For x = p/q each step maps the numerator p to p*d - q < p, so a rational
/// orbit dies within q steps; running past that bound is an arithmetic bug
/// and raises std::logic_error.
inline ExpansionResult engel_digits(const Rational& x, std::size_t max_depth)
{
    require_unit_interval(x, false);
    if (max_depth == 0) {
        throw std::invalid_argument("max_depth must be positive");
    }
    const Integer safety_cap = x.get_den();

    std::vector<Integer> digits;
    Integer num = x.get_num();
    const Integer den = x.get_den();
    while (digits.size() < max_depth && num != 0) {
        if (Integer(static_cast<unsigned long>(digits.size())) >= safety_cap) {
            throw std::logic_error("Engel orbit of " + to_string(x) + " did not terminate within its denominator");
        }
        Integer d = ceil_div(den, num);
        num = num * d - den;
        digits.push_back(std::move(d));
    }
    const bool terminated = num == 0;
    return ExpansionResult{DigitWord(std::move(digits)), terminated, make_rational(num, den)};
}

/// Partial Engel sum 1/s_1 + 1/(s_1 s_2) + ... + 1/(s_1 ... s_n). This is
/// also the left endpoint A_n of the order-n cylinder.
inline Rational reconstruct(const DigitWord& w)
{
    // Horner form from the innermost term: (1 + (1 + ...)/s_2)/s_1.
    Rational acc = 0;
    for (std::size_t k = w.size(); k-- > 0;) {
        acc = (acc + 1) / Rational(w[k]);
    }
    return acc;
}

/// The order-n cylinder {x : d_k(x) = sigma_k, k <= n} = [A_n, B_n) where
/// B_n replaces the last term of A_n by 1/(s_1 ... s_{n-1} (s_n - 1)).
inline RatInterval cylinder_interval(const DigitWord& w)
{
    Rational head = 0; // A_{n-1}
    Integer p = 1;     // P_{n-1}
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
        p *= w[k];
        head += make_rational(1, p);
    }
    const Integer& last = w.back();
    Rational a = head + make_rational(1, p * last);
    Rational b = head + make_rational(1, p * (last - 1));
    return RatInterval::half_open(std::move(a), std::move(b));
}

inline Rational cylinder_length(const DigitWord& w)
{
    return make_rational(1, w.product() * (w.back() - 1));
}

} // namespace engel

#endif
