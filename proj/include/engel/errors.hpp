#ifndef ENGEL_ERRORS_HPP
#define ENGEL_ERRORS_HPP

#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace engel {

// Digit word that is empty or not non-decreasing from 2, or not in the
// digit boxes of a construction.
class invalid_word : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A family violates s_n >= t_n >= 2 or s_{n+1} >= s_n + t_n.
class condition_violation : public std::domain_error {
public:
    condition_violation(const std::string& what, std::size_t level)
        : std::domain_error(what), level_{level} {}

    std::size_t level() const noexcept { return level_; }

private:
    std::size_t level_;
};

// A sequence generator could not produce an exact positive value.
class evaluation_error : public std::runtime_error {
public:
    evaluation_error(const std::string& what, std::size_t level)
        : std::runtime_error(what), level_{level} {}

    std::size_t level() const noexcept { return level_; }

private:
    std::size_t level_;
};

// A level has more basic intervals than the caller allowed.
class size_limit_error : public std::length_error {
public:
    size_limit_error(const std::string& what, mpz_class count)
        : std::length_error(what), count_{std::move(count)} {}

    const mpz_class& count() const noexcept { return count_; }

private:
    mpz_class count_;
};

} // namespace engel

#endif
