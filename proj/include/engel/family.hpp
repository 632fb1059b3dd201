#ifndef ENGEL_FAMILY_HPP
#define ENGEL_FAMILY_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace engel {

/// The sequence a * r^n.
struct GeometricTerm {
    Rational coefficient{1};
    Rational ratio;

    Rational at(std::size_t n) const { return coefficient * pow(ratio, n); }
};

inline std::string to_string(const GeometricTerm& g)
{
    return to_string(g.coefficient) + "*(" + to_string(g.ratio) + ")^n";
}

/// Generator n -> (s_n, t_n) of exact positive rationals, n >= 1.
///
/// Three kinds are supported:
///  - geometric: s_n = a * r^n, t_n = b * q^n;
///  - power-geometric: s_n = b^n, t_n = b^(theta n), available only where
///    b^(theta n) is rational (otherwise evaluation fails and an explicit
///    pair must be used);
///  - explicit-pair: an arbitrary closure or a finite table.
class SequenceFamily {
public:
    enum class Kind { geometric, power_geometric, explicit_pair };

    using Generator = std::function<std::pair<Rational, Rational>(std::size_t)>;

    static SequenceFamily geometric(GeometricTerm s, GeometricTerm t)
    {
        const bool certified = s.coefficient > 0 && s.ratio > 1;
        std::string label = "geometric s_n=" + to_string(s) + " t_n=" + to_string(t);
        Generator gen = [s = std::move(s), t = std::move(t)](std::size_t n) {
            return std::pair{s.at(n), t.at(n)};
        };
        return SequenceFamily(Kind::geometric, std::move(gen), certified, std::move(label));
    }

    /// s_n = base^n, t_n = base^(theta n) for rational theta = p/q.
    static SequenceFamily power_geometric(Rational base, Rational theta)
    {
        const bool certified = base > 1;
        std::string label = "power-geometric b=" + to_string(base) + " theta=" + to_string(theta);
        Generator gen = [base, theta](std::size_t n) {
            return std::pair{pow(base, n), rational_power(base, theta, n)};
        };
        return SequenceFamily(Kind::power_geometric, std::move(gen), certified, std::move(label));
    }

    /// Divergence of s_n cannot be certified from a closure, so it is only
    /// ever asserted for this kind.
    static SequenceFamily explicit_pair(Generator gen, std::string label = "explicit-pair")
    {
        return SequenceFamily(Kind::explicit_pair, std::move(gen), false, std::move(label));
    }

    /// Table of (s_n, t_n) for n = 1..size; evaluation past the end fails.
    static SequenceFamily table(std::vector<std::pair<Rational, Rational>> rows)
    {
        auto shared = std::make_shared<const std::vector<std::pair<Rational, Rational>>>(std::move(rows));
        std::string label = "explicit-pair table of " + std::to_string(shared->size()) + " levels";
        Generator gen = [shared](std::size_t n) {
            if (n > shared->size()) {
                throw evaluation_error("table family has no entry for level " + std::to_string(n), n);
            }
            return (*shared)[n - 1];
        };
        return SequenceFamily(Kind::explicit_pair, std::move(gen), false, std::move(label));
    }

    /// (s_n, t_n); throws evaluation_error for n = 0, generator failures, and
    /// non-positive values.
    std::pair<Rational, Rational> at(std::size_t n) const
    {
        if (n == 0) {
            throw evaluation_error("sequence levels start at 1", n);
        }
        std::pair<Rational, Rational> v;
        try {
            v = generator_(n);
        } catch (const evaluation_error&) {
            throw;
        } catch (const std::exception& e) {
            throw evaluation_error("generator failed at level " + std::to_string(n) + ": " + e.what(), n);
        }
        if (v.first <= 0 || v.second <= 0) {
            throw evaluation_error("generator returned a non-positive value at level " + std::to_string(n), n);
        }
        return v;
    }

    Rational s(std::size_t n) const { return at(n).first; }
    Rational t(std::size_t n) const { return at(n).second; }

    Kind kind() const noexcept { return kind_; }
    bool divergence_certified() const noexcept { return divergence_certified_; }
    const std::string& label() const noexcept { return label_; }

private:
    SequenceFamily(Kind kind, Generator gen, bool certified, std::string label)
        : kind_{kind}, generator_{std::move(gen)}, divergence_certified_{certified}, label_{std::move(label)} {}

    // base^(theta n) if it is rational, else evaluation_error.
    static Rational rational_power(const Rational& base, const Rational& theta, std::size_t n)
    {
        if (theta.get_den() > Integer(static_cast<unsigned long>(-1)) ||
            abs(theta.get_num()) > Integer(static_cast<unsigned long>(-1) / (n + 1))) {
            throw evaluation_error("theta too large for exact evaluation", n);
        }
        const unsigned long root = theta.get_den().get_ui();
        const Integer abs_num = abs(theta.get_num());
        const unsigned long exponent = abs_num.get_ui() * n;
        Rational powered = pow(base, exponent);
        Integer num_root;
        Integer den_root;
        const bool exact_num = mpz_root(num_root.get_mpz_t(), powered.get_num_mpz_t(), root) != 0;
        const bool exact_den = mpz_root(den_root.get_mpz_t(), powered.get_den_mpz_t(), root) != 0;
        if (!exact_num || !exact_den) {
            throw evaluation_error("b^(theta n) is irrational at level " + std::to_string(n) +
                                       "; use an explicit-pair family",
                                   n);
        }
        Rational r = make_rational(num_root, den_root);
        if (theta < 0) {
            r = 1 / r;
        }
        return r;
    }

    Kind kind_;
    Generator generator_;
    bool divergence_certified_;
    std::string label_;
};

inline const char* to_string(SequenceFamily::Kind k)
{
    switch (k) {
    case SequenceFamily::Kind::geometric:
        return "geometric";
    case SequenceFamily::Kind::power_geometric:
        return "power-geometric";
    case SequenceFamily::Kind::explicit_pair:
        return "explicit-pair";
    }
    return "unknown";
}

} // namespace engel

#endif
