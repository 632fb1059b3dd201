#ifndef ENGEL_CONSTRUCTION_HPP
#define ENGEL_CONSTRUCTION_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "expansion.hpp"
#include "family.hpp"
#include "interval.hpp"
#include "rational.hpp"

namespace engel {

enum class DivergenceStatus { certified, asserted, violated_at_depth };

inline const char* to_string(DivergenceStatus s)
{
    switch (s) {
    case DivergenceStatus::certified:
        return "certified";
    case DivergenceStatus::asserted:
        return "asserted";
    case DivergenceStatus::violated_at_depth:
        return "violated-at-depth";
    }
    return "unknown";
}

/// Outcome of checking (1) s_n >= t_n >= 2 and (2) s_{n+1} >= s_n + t_n for
/// n <= depth, plus the status of (3) s_n -> infinity.
struct ConditionReport {
    std::size_t depth_checked = 0;
    bool cond1_ok = true;
    std::optional<std::size_t> cond1_first_violation;
    bool cond2_ok = true;
    std::optional<std::size_t> cond2_first_violation;
    DivergenceStatus cond3_status = DivergenceStatus::asserted;

    bool ok() const { return cond1_ok && cond2_ok && cond3_status != DivergenceStatus::violated_at_depth; }
};

/// Exact check of the growth conditions through `depth`. Condition (3) cannot
/// be decided from a finite prefix: it is certified only for built-in families
/// with ratio > 1, reported violated when the prefix shows s_{n+1} <= s_n, and
/// asserted otherwise.
inline ConditionReport check_conditions(const SequenceFamily& f, std::size_t depth)
{
    if (depth == 0) {
        throw std::invalid_argument("depth must be positive");
    }
    ConditionReport report;
    report.depth_checked = depth;
    bool shrinking = false;
    auto current = f.at(1);
    for (std::size_t n = 1; n <= depth; ++n) {
        auto next = f.at(n + 1);
        const auto& [s, t] = current;
        if (report.cond1_ok && !(s >= t && t >= 2)) {
            report.cond1_ok = false;
            report.cond1_first_violation = n;
        }
        if (report.cond2_ok && !(next.first >= s + t)) {
            report.cond2_ok = false;
            report.cond2_first_violation = n;
        }
        if (next.first <= s) {
            shrinking = true;
        }
        current = std::move(next);
    }
    if (shrinking) {
        report.cond3_status = DivergenceStatus::violated_at_depth;
    } else if (f.divergence_certified() && report.cond1_ok && report.cond2_ok) {
        report.cond3_status = DivergenceStatus::certified;
    } else {
        report.cond3_status = DivergenceStatus::asserted;
    }
    return report;
}

/// Digits j allowed at one level: s_k < j <= s_k + t_k.
struct DigitRange {
    Integer lo; // floor(s_k) + 1
    Integer hi; // floor(s_k + t_k)

    Integer count() const { return hi - lo + 1; }
    bool contains(const Integer& j) const { return j >= lo && j <= hi; }
};

struct LevelQuantities {
    std::size_t n = 0;
    Integer count;               // N_n = m_1 ... m_n
    std::vector<Integer> m_list; // m_1 .. m_n
    Rational delta;              // diameter bound of the order-n cover
    Rational epsilon;            // gap lower bound at order n
};

/// Lazy lexicographic stream over the digit boxes D_n.
class WordEnumerator {
public:
    WordEnumerator(std::vector<DigitRange> ranges, std::uint64_t limit)
        : ranges_{std::move(ranges)}, limit_{limit}
    {
        current_.reserve(ranges_.size());
        for (const auto& r : ranges_) {
            current_.push_back(r.lo);
        }
    }

    /// Next word, or nullopt when exhausted or when the limit was reached
    /// (truncated() tells the two apart).
    std::optional<DigitWord> next()
    {
        if (done_) {
            return std::nullopt;
        }
        if (emitted_ == limit_) {
            truncated_ = true;
            done_ = true;
            return std::nullopt;
        }
        DigitWord word(current_);
        ++emitted_;
        advance();
        return word;
    }

    bool truncated() const noexcept { return truncated_; }
    std::uint64_t emitted() const noexcept { return emitted_; }

private:
    void advance()
    {
        for (std::size_t k = ranges_.size(); k-- > 0;) {
            if (current_[k] < ranges_[k].hi) {
                ++current_[k];
                return;
            }
            current_[k] = ranges_[k].lo;
        }
        done_ = true;
    }

    std::vector<DigitRange> ranges_;
    std::vector<Integer> current_;
    std::uint64_t limit_;
    std::uint64_t emitted_ = 0;
    bool truncated_ = false;
    bool done_ = false;
};

inline constexpr std::uint64_t default_level_limit = 1'000'000;

/// Exact data of the nested construction E_0 > E_1 > ... for one family,
/// evaluated and validated for levels 1..levels().
///
/// Construction(f, L) checks (1) at every level k <= L and (2) at every
/// k < L. Operations at order n that look one level deeper (basic intervals,
/// delta_n, epsilon_n, gaps) require L >= n + 1.
class Construction {
public:
    Construction(SequenceFamily family, std::size_t levels) : family_{std::move(family)}
    {
        if (levels == 0) {
            throw std::invalid_argument("construction needs at least one level");
        }
        s_.reserve(levels);
        t_.reserve(levels);
        ranges_.reserve(levels);
        for (std::size_t k = 1; k <= levels; ++k) {
            auto [s, t] = family_.at(k);
            if (!(s >= t && t >= 2)) {
                throw condition_violation("condition s_n >= t_n >= 2 fails at n = " + std::to_string(k), k);
            }
            if (k > 1 && !(s >= s_.back() + t_.back())) {
                throw condition_violation("condition s_{n+1} >= s_n + t_n fails at n = " + std::to_string(k - 1),
                                          k - 1);
            }
            ranges_.push_back(DigitRange{floor(s) + 1, floor(s + t)});
            s_.push_back(std::move(s));
            t_.push_back(std::move(t));
        }
    }

    std::size_t levels() const noexcept { return s_.size(); }
    const SequenceFamily& family() const noexcept { return family_; }

    const Rational& s(std::size_t k) const { return s_.at(index(k)); }
    const Rational& t(std::size_t k) const { return t_.at(index(k)); }
    const DigitRange& digit_range(std::size_t k) const { return ranges_.at(index(k)); }

    /// Children per parent: m_k = floor(s_k + t_k) - floor(s_k).
    Integer m(std::size_t k) const { return digit_range(k).count(); }

    /// N_n = #D_n = m_1 ... m_n; N_0 = 1.
    Integer count(std::size_t n) const
    {
        Integer c = 1;
        for (std::size_t k = 1; k <= n; ++k) {
            c *= m(k);
        }
        return c;
    }

    bool in_digit_boxes(const DigitWord& w) const
    {
        if (w.size() > levels()) {
            return false;
        }
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (!ranges_[k].contains(w[k])) {
                return false;
            }
        }
        return true;
    }

    /// J_n(w): closure of the union of the child cylinders I_{n+1}(w, j) over
    /// the order-(n+1) window. The children abut, so the union is the closed
    /// interval [S + 1/(P j_max), S + 1/(P (j_min - 1))] with S the partial
    /// Engel sum of w and P the digit product.
    RatInterval basic_interval(const DigitWord& w) const
    {
        const std::size_t n = w.size();
        need_levels(n + 1);
        if (!in_digit_boxes(w)) {
            throw invalid_word("word " + to_string(w) + " is not in D_" + std::to_string(n));
        }
        const Rational sum = reconstruct(w);
        const Integer p = w.product();
        const DigitRange& child = digit_range(n + 1);
        return RatInterval::closed(sum + make_rational(1, p * child.hi), sum + make_rational(1, p * (child.lo - 1)));
    }

    /// delta_n = (1 / (s_1 ... s_n)) * 4 t_{n+1} / s_{n+1}^2.
    Rational delta(std::size_t n) const
    {
        need_levels(n + 1);
        Rational prod = 1;
        for (std::size_t k = 1; k <= n; ++k) {
            prod *= s(k);
        }
        return 4 * t(n + 1) / (prod * s(n + 1) * s(n + 1));
    }

    /// epsilon_n = 1 / (2^(n+3) s_1 ... s_n s_n).
    Rational epsilon(std::size_t n) const
    {
        need_levels(n + 1);
        if (n == 0) {
            throw std::invalid_argument("epsilon_n is defined for n >= 1");
        }
        Rational prod = 1;
        for (std::size_t k = 1; k <= n; ++k) {
            prod *= s(k);
        }
        Integer two_pow;
        mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, n + 3);
        return 1 / (Rational(two_pow) * prod * s(n));
    }

    WordEnumerator words(std::size_t n, std::uint64_t limit = default_level_limit) const
    {
        if (n == 0) {
            throw std::invalid_argument("D_n is defined for n >= 1");
        }
        need_levels(n);
        return WordEnumerator(std::vector<DigitRange>(ranges_.begin(), ranges_.begin() + static_cast<std::ptrdiff_t>(n)),
                              limit);
    }

    /// E_n as its basic intervals sorted by left endpoint; E_0 = [0,1].
    std::vector<RatInterval> level_set(std::size_t n, std::uint64_t limit = default_level_limit) const
    {
        if (n == 0) {
            return {RatInterval::closed(0, 1)};
        }
        need_levels(n + 1);
        require_within(n, limit);
        std::vector<RatInterval> out;
        out.reserve(count(n).get_ui());
        auto it = words(n, limit);
        while (auto w = it.next()) {
            out.push_back(basic_interval(*w));
        }
        std::sort(out.begin(), out.end(), [](const RatInterval& a, const RatInterval& b) { return a.lo() < b.lo(); });
        return out;
    }

    /// Smallest distance between consecutive order-n basic intervals, or
    /// nullopt when the level has a single interval.
    std::optional<Rational> min_gap(std::size_t n, std::uint64_t limit = default_level_limit) const
    {
        const auto level = level_set(n, limit);
        std::optional<Rational> best;
        for (std::size_t i = 1; i < level.size(); ++i) {
            Rational gap = level[i].lo() - level[i - 1].hi();
            if (!best || gap < *best) {
                best = std::move(gap);
            }
        }
        return best;
    }

    /// max over D_n of |J_n(w)|, by streaming through every word.
    Rational max_basic_length(std::size_t n, std::uint64_t limit = default_level_limit) const
    {
        need_levels(n + 1);
        require_within(n, limit);
        // |J_n(w)| = (1/P(w)) (1/(j_min - 1) - 1/j_max) depends on w only
        // through P(w), so the scan tracks the smallest digit product.
        std::optional<Integer> smallest;
        auto it = words(n, limit);
        while (auto w = it.next()) {
            Integer p = w->product();
            if (!smallest || p < *smallest) {
                smallest = std::move(p);
            }
        }
        const DigitRange& child = digit_range(n + 1);
        return (make_rational(1, child.lo - 1) - make_rational(1, child.hi)) / Rational(*smallest);
    }

    /// Uniform random prefix descent through D_n: each digit is drawn
    /// uniformly from its level window. Deterministic for a given seed.
    std::vector<std::pair<DigitWord, RatInterval>> sample(std::size_t n, std::size_t count,
                                                           unsigned long seed) const
    {
        need_levels(n + 1);
        gmp_randclass rng(gmp_randinit_mt);
        rng.seed(seed);
        std::vector<std::pair<DigitWord, RatInterval>> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            std::vector<Integer> digits;
            digits.reserve(n);
            for (std::size_t k = 1; k <= n; ++k) {
                const DigitRange& r = digit_range(k);
                Integer offset = rng.get_z_range(r.count());
                digits.push_back(r.lo + offset);
            }
            DigitWord w(std::move(digits));
            auto iv = basic_interval(w);
            out.emplace_back(std::move(w), std::move(iv));
        }
        return out;
    }

    LevelQuantities quantities(std::size_t n) const
    {
        LevelQuantities q;
        q.n = n;
        q.count = 1;
        for (std::size_t k = 1; k <= n; ++k) {
            q.m_list.push_back(m(k));
            q.count *= q.m_list.back();
        }
        q.delta = delta(n);
        q.epsilon = epsilon(n);
        return q;
    }

private:
    static std::size_t index(std::size_t k)
    {
        if (k == 0) {
            throw std::out_of_range("levels start at 1");
        }
        return k - 1;
    }

    void need_levels(std::size_t k) const
    {
        if (k > levels()) {
            throw std::out_of_range("construction evaluated to level " + std::to_string(levels()) + ", need " +
                                    std::to_string(k));
        }
    }

    void require_within(std::size_t n, std::uint64_t limit) const
    {
        const Integer total = count(n);
        if (total > Integer(static_cast<unsigned long>(limit))) {
            throw size_limit_error("level " + std::to_string(n) + " has N_n = " + total.get_str(10) +
                                       " basic intervals, above the limit " + std::to_string(limit),
                                   total);
        }
    }

    SequenceFamily family_;
    std::vector<Rational> s_;
    std::vector<Rational> t_;
    std::vector<DigitRange> ranges_;
};

// Free-function forms. Each builds the construction as deep as the
// operation needs and therefore validates the conditions it relies on.

inline DigitRange digit_range(const SequenceFamily& f, std::size_t k)
{
    return Construction(f, k).digit_range(k);
}

inline Integer m_n(const SequenceFamily& f, std::size_t n)
{
    return Construction(f, n).m(n);
}

inline WordEnumerator enumerate_Dn(const SequenceFamily& f, std::size_t n, std::uint64_t limit)
{
    return Construction(f, n).words(n, limit);
}

inline RatInterval basic_interval(const SequenceFamily& f, const DigitWord& w)
{
    return Construction(f, w.size() + 1).basic_interval(w);
}

inline std::vector<RatInterval> level_set(const SequenceFamily& f, std::size_t n,
                                          std::uint64_t limit = default_level_limit)
{
    if (n == 0) {
        return {RatInterval::closed(0, 1)};
    }
    return Construction(f, n + 1).level_set(n, limit);
}

inline Rational delta_n(const SequenceFamily& f, std::size_t n)
{
    return Construction(f, n + 1).delta(n);
}

inline Rational epsilon_n(const SequenceFamily& f, std::size_t n)
{
    return Construction(f, n + 1).epsilon(n);
}

inline std::optional<Rational> min_gap(const SequenceFamily& f, std::size_t n,
                                       std::uint64_t limit = default_level_limit)
{
    return Construction(f, n + 1).min_gap(n, limit);
}

inline LevelQuantities level_quantities(const SequenceFamily& f, std::size_t n)
{
    return Construction(f, n + 1).quantities(n);
}

} // namespace engel

#endif
