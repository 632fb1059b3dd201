#ifndef ENGEL_DIMENSION_HPP
#define ENGEL_DIMENSION_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "construction.hpp"
#include "errors.hpp"
#include "family.hpp"
#include "rational.hpp"

// Dimension quotients of E({s_n},{t_n}). Counts and geometry stay exact; only
// the logarithms and the final quotients are floating point. All logarithms
// are natural, which does not affect any quotient.

namespace engel {

/// Per-level logarithms log s_k, log t_k, log m_k for k = 1..levels, taken
/// from the exact values. Building the table checks (1) at every level and
/// (2) between consecutive levels, streaming so that only one level of exact
/// data is alive at a time.
class LogTable {
public:
    LogTable(const SequenceFamily& f, std::size_t levels)
    {
        if (levels == 0) {
            throw std::invalid_argument("log table needs at least one level");
        }
        log_s_.reserve(levels);
        log_t_.reserve(levels);
        log_m_.reserve(levels);
        Rational prev_s;
        Rational prev_t;
        for (std::size_t k = 1; k <= levels; ++k) {
            auto [s, t] = f.at(k);
            if (!(s >= t && t >= 2)) {
                throw condition_violation("condition s_n >= t_n >= 2 fails at n = " + std::to_string(k), k);
            }
            if (k > 1 && !(s >= prev_s + prev_t)) {
                throw condition_violation("condition s_{n+1} >= s_n + t_n fails at n = " + std::to_string(k - 1),
                                          k - 1);
            }
            const Integer m = floor(s + t) - floor(s);
            log_s_.push_back(log(s));
            log_t_.push_back(log(t));
            log_m_.push_back(log(m));
            prev_s = std::move(s);
            prev_t = std::move(t);
        }
    }

    std::size_t levels() const noexcept { return log_s_.size(); }
    long double log_s(std::size_t k) const { return log_s_.at(k - 1); }
    long double log_t(std::size_t k) const { return log_t_.at(k - 1); }
    long double log_m(std::size_t k) const { return log_m_.at(k - 1); }

private:
    std::vector<long double> log_s_;
    std::vector<long double> log_t_;
    std::vector<long double> log_m_;
};

/// F_n, upper_n and lower_n for n = 1..n_max, computed with running sums.
struct QuotientSequences {
    std::vector<double> formula;              // F_n
    std::vector<double> upper;                // log N_n / -log delta_n
    std::vector<std::optional<double>> lower; // absent at n = 1
};

inline constexpr long double ln2_ld = 0.693147180559945309417232121458176568L;

/// Needs a table with at least n_max + 1 levels.
inline QuotientSequences quotient_sequences(const LogTable& logs, std::size_t n_max)
{
    if (n_max == 0) {
        throw std::invalid_argument("n_max must be positive");
    }
    if (logs.levels() < n_max + 1) {
        throw std::out_of_range("log table too short for n_max");
    }
    QuotientSequences out;
    out.formula.reserve(n_max);
    out.upper.reserve(n_max);
    out.lower.reserve(n_max);

    long double sum_log_t = 0; // sum_{k<=n} log t_k
    long double sum_log_s = 0; // sum_{k<=n} log s_k
    long double sum_log_m = 0; // sum_{k<=n} log m_k = log N_n
    for (std::size_t n = 1; n <= n_max; ++n) {
        const long double prev_sum_log_m = sum_log_m;
        sum_log_t += logs.log_t(n);
        sum_log_s += logs.log_s(n);
        sum_log_m += logs.log_m(n);
        const long double ls_next = logs.log_s(n + 1);
        const long double lt_next = logs.log_t(n + 1);

        // sum_{k<=n+1} log s_k + log s_{n+1} - log t_{n+1}
        const long double formula_den = sum_log_s + 2 * ls_next - lt_next;
        out.formula.push_back(static_cast<double>(sum_log_t / formula_den));

        // -log delta_n = sum_{k<=n} log s_k + 2 log s_{n+1} - log t_{n+1} - log 4
        const long double neg_log_delta = formula_den - 2 * ln2_ld;
        out.upper.push_back(static_cast<double>(sum_log_m / neg_log_delta));

        if (n == 1) {
            out.lower.push_back(std::nullopt);
        } else {
            // -log(m_n eps_n) = -log m_n + (n+3) log 2 + sum_{k<=n} log s_k + log s_n
            const long double neg_log = -logs.log_m(n) + static_cast<long double>(n + 3) * ln2_ld + sum_log_s +
                                        logs.log_s(n);
            out.lower.push_back(static_cast<double>(prev_sum_log_m / neg_log));
        }
    }
    return out;
}

inline QuotientSequences quotient_sequences(const SequenceFamily& f, std::size_t n_max)
{
    if (n_max == 0) {
        throw std::invalid_argument("n_max must be positive");
    }
    return quotient_sequences(LogTable(f, n_max + 1), n_max);
}

/// F_n = sum_{k<=n} log t_k / (sum_{k<=n+1} log s_k + log s_{n+1} - log t_{n+1}).
/// Its liminf is the Hausdorff dimension of E({s_n},{t_n}).
inline double formula_quotient(const SequenceFamily& f, std::size_t n)
{
    return quotient_sequences(f, n).formula.back();
}

/// log N_n / (-log delta_n): the covering bound at a finite level.
inline double upper_bound_quotient(const SequenceFamily& f, std::size_t n)
{
    return quotient_sequences(f, n).upper.back();
}

/// log(m_1 ... m_{n-1}) / (-log(m_n epsilon_n)): the gap bound at a finite
/// level. Absent for n = 1, where the product is empty.
inline std::optional<double> lower_bound_quotient(const SequenceFamily& f, std::size_t n)
{
    return quotient_sequences(f, n).lower.back();
}

struct DimensionReport {
    std::size_t n_max = 0;
    std::size_t tail_window = 0;
    std::vector<double> formula;
    std::vector<double> upper;
    std::vector<std::optional<double>> lower;
    double tail_min_formula = 0;
    bool monotone_tail = true;
    // Minimum of F_n over the tail window: a finite-prefix proxy for the
    // liminf, not the liminf itself.
    double estimated_dim = 0;
};

inline constexpr const char* estimate_caveat =
    "estimated_dim is the minimum of F_n over the last tail_window levels; "
    "a finite-prefix proxy for the liminf, not its value";

inline std::size_t default_tail_window(std::size_t n_max)
{
    return std::max<std::size_t>(1, n_max / 10);
}

/// tail_window = 0 selects the default of 10% of n_max (at least 1).
inline DimensionReport estimate_dim(const LogTable& logs, std::size_t n_max, std::size_t tail_window = 0)
{
    if (tail_window == 0) {
        tail_window = default_tail_window(n_max);
    }
    if (n_max == 0 || tail_window > n_max) {
        throw std::invalid_argument("need n_max >= tail_window >= 1");
    }
    auto seq = quotient_sequences(logs, n_max);

    DimensionReport report;
    report.n_max = n_max;
    report.tail_window = tail_window;
    const std::span<const double> tail(seq.formula.data() + (n_max - tail_window), tail_window);
    report.tail_min_formula = *std::min_element(tail.begin(), tail.end());
    const bool non_decreasing = std::is_sorted(tail.begin(), tail.end());
    const bool non_increasing = std::is_sorted(tail.rbegin(), tail.rend());
    report.monotone_tail = non_decreasing || non_increasing;
    report.estimated_dim = report.tail_min_formula;
    report.formula = std::move(seq.formula);
    report.upper = std::move(seq.upper);
    report.lower = std::move(seq.lower);
    return report;
}

inline DimensionReport estimate_dim(const SequenceFamily& f, std::size_t n_max, std::size_t tail_window = 0)
{
    if (n_max == 0) {
        throw std::invalid_argument("need n_max >= tail_window >= 1");
    }
    return estimate_dim(LogTable(f, n_max + 1), n_max, tail_window);
}

struct CoverFitPoint {
    std::size_t depth;
    Integer count;       // N_n
    Rational max_length; // max |J_n|
    double log_count;
    double neg_log_length;
};

struct CoverFit {
    double slope = 0;
    double intercept = 0;
    std::vector<CoverFitPoint> points;
};

/// Ordinary least-squares fit (with intercept) of log N_n against
/// -log(max |J_n|) over the given depths, with N_n and max |J_n| obtained by
/// enumerating each level exactly.
inline CoverFit empirical_cover_fit(const SequenceFamily& f, std::span<const std::size_t> depths,
                                    std::uint64_t limit = default_level_limit)
{
    const std::set<std::size_t> distinct(depths.begin(), depths.end());
    if (distinct.size() < 2) {
        throw std::invalid_argument("cover fit needs at least two distinct depths");
    }
    if (*distinct.begin() == 0) {
        throw std::invalid_argument("cover fit depths start at 1");
    }
    const Construction c(f, *distinct.rbegin() + 1);

    CoverFit fit;
    for (std::size_t n : distinct) {
        CoverFitPoint p{n, c.count(n), c.max_basic_length(n, limit), 0, 0};
        p.log_count = static_cast<double>(log(p.count));
        p.neg_log_length = static_cast<double>(-log(p.max_length));
        fit.points.push_back(std::move(p));
    }

    const auto k = static_cast<long double>(fit.points.size());
    long double sx = 0;
    long double sy = 0;
    for (const auto& p : fit.points) {
        sx += p.neg_log_length;
        sy += p.log_count;
    }
    const long double mx = sx / k;
    const long double my = sy / k;
    long double sxx = 0;
    long double sxy = 0;
    for (const auto& p : fit.points) {
        sxx += (p.neg_log_length - mx) * (p.neg_log_length - mx);
        sxy += (p.neg_log_length - mx) * (p.log_count - my);
    }
    if (sxx == 0) {
        throw std::domain_error("cover fit abscissae are all equal");
    }
    fit.slope = static_cast<double>(sxy / sxx);
    fit.intercept = static_cast<double>(my - sxy / sxx * mx);
    return fit;
}

} // namespace engel

#endif
