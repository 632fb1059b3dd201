#ifndef ENGEL_INTERVAL_HPP
#define ENGEL_INTERVAL_HPP

#include <stdexcept>
#include <string>

#include "rational.hpp"

namespace engel {

/// Interval with exact endpoints and per-end open/closed flags.
/// Invariant: lo <= hi, and lo == hi only when both ends are closed.
class RatInterval {
public:
    RatInterval(Rational lo, Rational hi, bool lo_closed, bool hi_closed)
        : lo_{std::move(lo)}, hi_{std::move(hi)}, lo_closed_{lo_closed}, hi_closed_{hi_closed}
    {
        if (lo_ > hi_) {
            throw std::invalid_argument("interval with lo > hi");
        }
        if (lo_ == hi_ && !(lo_closed_ && hi_closed_)) {
            throw std::invalid_argument("degenerate interval must be closed");
        }
    }

    static RatInterval closed(Rational lo, Rational hi)
    {
        return RatInterval(std::move(lo), std::move(hi), true, true);
    }

    static RatInterval half_open(Rational lo, Rational hi)
    {
        return RatInterval(std::move(lo), std::move(hi), true, false);
    }

    const Rational& lo() const noexcept { return lo_; }
    const Rational& hi() const noexcept { return hi_; }
    bool lo_closed() const noexcept { return lo_closed_; }
    bool hi_closed() const noexcept { return hi_closed_; }

    Rational length() const { return hi_ - lo_; }

    bool contains(const Rational& x) const
    {
        const bool above = lo_closed_ ? x >= lo_ : x > lo_;
        const bool below = hi_closed_ ? x <= hi_ : x < hi_;
        return above && below;
    }

    RatInterval closure() const { return closed(lo_, hi_); }

    /// Set inclusion, taking the end flags into account.
    bool subset_of(const RatInterval& other) const
    {
        const bool left_ok = lo_ > other.lo_ || (lo_ == other.lo_ && (other.lo_closed_ || !lo_closed_));
        const bool right_ok = hi_ < other.hi_ || (hi_ == other.hi_ && (other.hi_closed_ || !hi_closed_));
        return left_ok && right_ok;
    }

    friend bool operator==(const RatInterval& a, const RatInterval& b)
    {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.lo_closed_ == b.lo_closed_ &&
               a.hi_closed_ == b.hi_closed_;
    }

private:
    Rational lo_;
    Rational hi_;
    bool lo_closed_;
    bool hi_closed_;
};

inline std::string to_string(const RatInterval& iv)
{
    return std::string(iv.lo_closed() ? "[" : "(") + to_string(iv.lo()) + ", " + to_string(iv.hi()) +
           (iv.hi_closed() ? "]" : ")");
}

} // namespace engel

#endif
