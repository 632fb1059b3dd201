#ifndef ENGEL_CLI_HPP
#define ENGEL_CLI_HPP

// Command-line front end: family specifications, dispatch, and the text /
// csv / json emitters. Exact values are written as "p/q" strings and
// quotients as shortest round-trip decimal strings, so output is
// locale-independent and byte-for-byte reproducible.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "construction.hpp"
#include "dimension.hpp"
#include "errors.hpp"
#include "expansion.hpp"
#include "family.hpp"
#include "rational.hpp"

namespace engel::cli {

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown by parse_config for --help; what() holds the help text.
class help_requested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Command { digits, cylinder, check, level, quantities, dim, cover_fit };
enum class OutputFormat { text, csv, json };

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_condition = 2;

struct RunConfig {
    Command command = Command::digits;
    std::optional<Rational> x;
    std::optional<DigitWord> word;
    std::optional<SequenceFamily> family;
    std::string family_text; // kind and parameters as given, for reports
    std::size_t depth = 0;
    std::size_t n_max = 1000;
    std::size_t tail_window = 0; // 0: 10% of n_max
    std::uint64_t limit = default_level_limit;
    std::size_t sample = 0;      // level: > 0 switches to random prefix descent
    std::vector<std::size_t> depths;
    std::size_t exact_digits = 200;
    OutputFormat output = OutputFormat::text;
    unsigned long seed = 1;
};

namespace detail {

inline Command parse_command(const std::string& name)
{
    if (name == "digits") return Command::digits;
    if (name == "cylinder") return Command::cylinder;
    if (name == "check") return Command::check;
    if (name == "level") return Command::level;
    if (name == "quantities") return Command::quantities;
    if (name == "dim") return Command::dim;
    if (name == "cover-fit") return Command::cover_fit;
    throw usage_error("unknown command '" + name + "'");
}

inline Rational rational_flag(const std::string& flag, const std::string& text)
{
    try {
        return parse_rational(text);
    } catch (const std::exception&) {
        throw usage_error(flag + ": expected an exact rational (p/q, integer or decimal), got '" + text + "'");
    }
}

inline std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    return parts;
}

// "r" or "r^n" is r^n; "a*r^n" is a * r^n.
inline GeometricTerm geometric_term(const std::string& flag, const std::string& text)
{
    std::string body = text;
    GeometricTerm term;
    if (auto star = body.find('*'); star != std::string::npos) {
        term.coefficient = rational_flag(flag, body.substr(0, star));
        body = body.substr(star + 1);
        if (body.size() < 2 || body.substr(body.size() - 2) != "^n") {
            throw usage_error(flag + ": expected a*r^n, got '" + text + "'");
        }
    }
    if (body.size() >= 2 && body.substr(body.size() - 2) == "^n") {
        body.resize(body.size() - 2);
    }
    term.ratio = rational_flag(flag, body);
    return term;
}

inline std::vector<Rational> rational_list(const std::string& flag, const std::string& text)
{
    std::vector<Rational> out;
    for (const auto& part : split(text, ',')) {
        out.push_back(rational_flag(flag, part));
    }
    return out;
}

inline std::vector<std::size_t> depth_list(const std::string& text)
{
    std::vector<std::size_t> out;
    auto number = [&](const std::string& s) -> std::size_t {
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || v == 0) {
            throw usage_error("--depths: expected positive integers as 'a..b' or 'a,b,c', got '" + text + "'");
        }
        return v;
    };
    if (auto dots = text.find(".."); dots != std::string::npos) {
        const std::size_t lo = number(text.substr(0, dots));
        const std::size_t hi = number(text.substr(dots + 2));
        if (hi < lo) {
            throw usage_error("--depths: empty range '" + text + "'");
        }
        for (std::size_t d = lo; d <= hi; ++d) {
            out.push_back(d);
        }
        return out;
    }
    for (const auto& part : split(text, ',')) {
        out.push_back(number(part));
    }
    return out;
}

inline std::string decimal(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

// "~d.ddddddddde<exp>" for a positive value known through its natural log.
inline std::string approximate(long double ln_value)
{
    constexpr long double ln10 = 2.302585092994045684017991454684364208L;
    const long double log10v = ln_value / ln10;
    long double exponent = std::floor(log10v);
    long double mantissa = std::pow(10.0L, log10v - exponent);
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, static_cast<double>(mantissa),
                                   std::chars_format::fixed, 9);
    std::string m(buf, ptr);
    if (m.rfind("10.", 0) == 0) {
        m = "1.000000000";
        exponent += 1;
    }
    return "~" + m + "e" + std::to_string(static_cast<long long>(exponent));
}

} // namespace detail

/// Parses argv (without the program name). Command-line flags take priority
/// over values read through --config, whose format is flat "key = value"
/// lines keyed by flag names without the leading dashes.
inline RunConfig parse_config(const std::vector<std::string>& args)
{
    CLI::App app{"Engel expansions and the Hausdorff dimension of digit-window sets", "engel"};
    app.allow_config_extras(false);
    app.set_config("--config", "", "flat key = value file; flags override its values");

    std::string command;
    std::string x, word, family, s, t, theta, depths, output = "text";
    std::size_t depth = 0, n_max = 1000, tail_window = 0, sample = 0, exact_digits = 200;
    std::uint64_t limit = default_level_limit;
    unsigned long seed = 1;

    app.add_option("command", command, "digits | cylinder | check | level | quantities | dim | cover-fit")
        ->required();
    auto* x_opt = app.add_option("--x", x, "exact rational in (0,1) for digits");
    auto* word_opt = app.add_option("--word", word, "digit word for cylinder, e.g. 2,3");
    auto* depth_opt = app.add_option("--depth", depth, "digit depth or construction level");
    auto* family_opt = app.add_option("--family", family, "geometric | power-geometric | explicit-pair");
    auto* s_opt = app.add_option("--s", s, "s_n: ratio r or a*r^n (geometric), base b (power-geometric), list (explicit-pair)");
    auto* t_opt = app.add_option("--t", t, "t_n: ratio q or b*q^n (geometric), list (explicit-pair)");
    auto* theta_opt = app.add_option("--theta", theta, "exponent p/q with t_n = b^(theta n) (power-geometric)");
    app.add_option("--n-max", n_max, "last level of the dimension sequences");
    app.add_option("--tail-window", tail_window, "levels in the liminf proxy window (default 10% of n-max)");
    app.add_option("--limit", limit, "cap on enumerated basic intervals");
    app.add_option("--sample", sample, "level: draw this many random words instead of enumerating");
    auto* depths_opt = app.add_option("--depths", depths, "cover-fit levels, 'a..b' or 'a,b,c'");
    app.add_option("--exact-digits", exact_digits, "largest exact value (in decimal digits) written in dim output");
    app.add_option("--output", output, "text | csv | json");
    app.add_option("--seed", seed, "seed for sampling modes");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw help_requested(app.help());
    } catch (const CLI::ParseError& e) {
        throw usage_error(e.what());
    }

    RunConfig cfg;
    cfg.command = detail::parse_command(command);
    if (output == "text") {
        cfg.output = OutputFormat::text;
    } else if (output == "csv") {
        cfg.output = OutputFormat::csv;
    } else if (output == "json") {
        cfg.output = OutputFormat::json;
    } else {
        throw usage_error("--output: expected text, csv or json, got '" + output + "'");
    }
    cfg.n_max = n_max;
    cfg.tail_window = tail_window;
    cfg.limit = limit;
    cfg.sample = sample;
    cfg.exact_digits = exact_digits;
    cfg.seed = seed;
    if (n_max == 0) {
        throw usage_error("--n-max must be positive");
    }
    if (limit == 0) {
        throw usage_error("--limit must be positive");
    }
    if (tail_window > n_max) {
        throw usage_error("--tail-window must not exceed --n-max");
    }

    if (depth_opt->count() > 0 && depth == 0) {
        throw usage_error("--depth must be positive");
    }
    switch (cfg.command) {
    case Command::digits: cfg.depth = depth_opt->count() ? depth : 64; break;
    case Command::check: cfg.depth = depth_opt->count() ? depth : 50; break;
    case Command::level:
    case Command::quantities: cfg.depth = depth_opt->count() ? depth : 2; break;
    default: cfg.depth = depth; break;
    }

    if (cfg.command == Command::digits) {
        if (x_opt->count() == 0) {
            throw usage_error("--x is required for digits");
        }
        cfg.x = detail::rational_flag("--x", x);
        if (*cfg.x <= 0 || *cfg.x >= 1) {
            throw usage_error("--x must lie in (0,1), got " + to_string(*cfg.x));
        }
        return cfg;
    }
    if (cfg.command == Command::cylinder) {
        if (word_opt->count() == 0) {
            throw usage_error("--word is required for cylinder");
        }
        std::vector<Integer> digits;
        for (const auto& part : detail::split(word, ',')) {
            const Rational d = detail::rational_flag("--word", part);
            if (d.get_den() != 1) {
                throw usage_error("--word: digits must be integers, got '" + part + "'");
            }
            digits.push_back(d.get_num());
        }
        if (!is_admissible(digits)) {
            throw usage_error("--word: digits must satisfy 2 <= d_1 <= ... <= d_n");
        }
        cfg.word = DigitWord(std::move(digits));
        return cfg;
    }

    if (cfg.command == Command::cover_fit) {
        if (depths_opt->count() == 0) {
            throw usage_error("--depths is required for cover-fit");
        }
        cfg.depths = detail::depth_list(depths);
        std::vector<std::size_t> sorted = cfg.depths;
        std::sort(sorted.begin(), sorted.end());
        if (std::unique(sorted.begin(), sorted.end()) - sorted.begin() < 2) {
            throw usage_error("--depths: need at least two distinct levels");
        }
    }

    if (family_opt->count() == 0) {
        throw usage_error("--family is required for this command");
    }
    if (s_opt->count() == 0) {
        throw usage_error("--s is required");
    }
    if (family == "geometric") {
        if (t_opt->count() == 0) {
            throw usage_error("--t is required for the geometric family");
        }
        if (theta_opt->count() > 0) {
            throw usage_error("--theta only applies to the power-geometric family");
        }
        cfg.family = SequenceFamily::geometric(detail::geometric_term("--s", s), detail::geometric_term("--t", t));
    } else if (family == "power-geometric") {
        if (theta_opt->count() == 0) {
            throw usage_error("--theta is required for the power-geometric family");
        }
        if (t_opt->count() > 0) {
            throw usage_error("--t is not accepted by the power-geometric family (t_n = b^(theta n))");
        }
        cfg.family = SequenceFamily::power_geometric(detail::rational_flag("--s", s),
                                                     detail::rational_flag("--theta", theta));
    } else if (family == "explicit-pair") {
        if (t_opt->count() == 0) {
            throw usage_error("--t is required for the explicit-pair family");
        }
        auto s_list = detail::rational_list("--s", s);
        auto t_list = detail::rational_list("--t", t);
        if (s_list.size() != t_list.size()) {
            throw usage_error("--s and --t lists must have the same length");
        }
        std::vector<std::pair<Rational, Rational>> rows;
        for (std::size_t i = 0; i < s_list.size(); ++i) {
            rows.emplace_back(s_list[i], t_list[i]);
        }
        cfg.family = SequenceFamily::table(std::move(rows));
    } else {
        throw usage_error("--family: expected geometric, power-geometric or explicit-pair, got '" + family + "'");
    }
    cfg.family_text = cfg.family->label();

    std::pair<Rational, Rational> first;
    try {
        first = cfg.family->at(1);
    } catch (const evaluation_error& e) {
        throw usage_error(std::string("--s/--t: ") + e.what());
    }
    if (cfg.command != Command::check && first.first < 2) {
        throw usage_error("--s: s_1 = " + to_string(first.first) + " < 2 violates s_n >= t_n >= 2");
    }
    return cfg;
}

namespace detail {

using Json = nlohmann::ordered_json;

inline void write_json(std::ostream& out, const Json& doc)
{
    out << doc.dump(2) << "\n";
}

inline int run_digits(const RunConfig& cfg, std::ostream& out)
{
    const auto result = engel_digits(*cfg.x, cfg.depth);
    const auto digits = result.digits.digits();
    switch (cfg.output) {
    case OutputFormat::text:
        out << "x: " << to_string(*cfg.x) << "\n";
        out << "digits: " << to_string(result.digits) << "\n";
        out << "terminated: " << (result.terminated ? "true" : "false") << "\n";
        out << "remainder: " << to_string(result.remainder) << "\n";
        break;
    case OutputFormat::csv:
        out << "k,digit\n";
        for (std::size_t k = 0; k < digits.size(); ++k) {
            out << k + 1 << "," << digits[k].get_str(10) << "\n";
        }
        break;
    case OutputFormat::json: {
        Json doc;
        doc["command"] = "digits";
        doc["x"] = to_string(*cfg.x);
        doc["digits"] = Json::array();
        for (const auto& d : digits) {
            doc["digits"].push_back(d.get_str(10));
        }
        doc["terminated"] = result.terminated;
        doc["remainder"] = to_string(result.remainder);
        doc["reconstruction"] = to_string(reconstruct(result.digits));
        write_json(out, doc);
        break;
    }
    }
    return exit_ok;
}

inline int run_cylinder(const RunConfig& cfg, std::ostream& out)
{
    const auto iv = cylinder_interval(*cfg.word);
    const auto len = cylinder_length(*cfg.word);
    switch (cfg.output) {
    case OutputFormat::text:
        out << "word: " << to_string(*cfg.word) << "\n";
        out << "cylinder: " << to_string(iv) << "\n";
        out << "length: " << to_string(len) << "\n";
        break;
    case OutputFormat::csv:
        out << "lo,hi,lo_closed,hi_closed,length\n";
        out << to_string(iv.lo()) << "," << to_string(iv.hi()) << "," << iv.lo_closed() << "," << iv.hi_closed()
            << "," << to_string(len) << "\n";
        break;
    case OutputFormat::json: {
        Json doc;
        doc["command"] = "cylinder";
        doc["word"] = Json::array();
        for (const auto& d : cfg.word->digits()) {
            doc["word"].push_back(d.get_str(10));
        }
        doc["lo"] = to_string(iv.lo());
        doc["hi"] = to_string(iv.hi());
        doc["lo_closed"] = iv.lo_closed();
        doc["hi_closed"] = iv.hi_closed();
        doc["length"] = to_string(len);
        write_json(out, doc);
        break;
    }
    }
    return exit_ok;
}

inline std::string index_text(const std::optional<std::size_t>& v)
{
    return v ? std::to_string(*v) : std::string();
}

inline int run_check(const RunConfig& cfg, std::ostream& out)
{
    const auto r = check_conditions(*cfg.family, cfg.depth);
    switch (cfg.output) {
    case OutputFormat::text:
        out << "family: " << cfg.family_text << "\n";
        out << "depth checked: " << r.depth_checked << "\n";
        out << "(1) s_n >= t_n >= 2: "
            << (r.cond1_ok ? std::string("ok") : "fails at n = " + index_text(r.cond1_first_violation)) << "\n";
        out << "(2) s_{n+1} >= s_n + t_n: "
            << (r.cond2_ok ? std::string("ok") : "fails at n = " + index_text(r.cond2_first_violation)) << "\n";
        out << "(3) s_n -> infinity: " << to_string(r.cond3_status) << "\n";
        out << (r.ok() ? "all conditions ok" : "conditions violated") << "\n";
        break;
    case OutputFormat::csv:
        out << "depth_checked,cond1_ok,cond1_first_violation,cond2_ok,cond2_first_violation,cond3_status\n";
        out << r.depth_checked << "," << r.cond1_ok << "," << index_text(r.cond1_first_violation) << ","
            << r.cond2_ok << "," << index_text(r.cond2_first_violation) << "," << to_string(r.cond3_status)
            << "\n";
        break;
    case OutputFormat::json: {
        Json doc;
        doc["command"] = "check";
        doc["family"] = cfg.family_text;
        doc["depth_checked"] = r.depth_checked;
        doc["cond1_ok"] = r.cond1_ok;
        doc["cond1_first_violation"] = r.cond1_first_violation ? Json(*r.cond1_first_violation) : Json(nullptr);
        doc["cond2_ok"] = r.cond2_ok;
        doc["cond2_first_violation"] = r.cond2_first_violation ? Json(*r.cond2_first_violation) : Json(nullptr);
        doc["cond3_status"] = to_string(r.cond3_status);
        doc["ok"] = r.ok();
        write_json(out, doc);
        break;
    }
    }
    return r.ok() ? exit_ok : exit_condition;
}

inline int run_level(const RunConfig& cfg, std::ostream& out)
{
    const Construction c(*cfg.family, cfg.depth + 1);
    std::vector<std::pair<std::string, RatInterval>> rows;
    if (cfg.sample > 0) {
        for (auto& [w, iv] : c.sample(cfg.depth, cfg.sample, cfg.seed)) {
            rows.emplace_back(to_string(w), std::move(iv));
        }
    } else {
        const Integer total = c.count(cfg.depth);
        if (total > Integer(static_cast<unsigned long>(cfg.limit))) {
            throw size_limit_error("level " + std::to_string(cfg.depth) + " has N_n = " + total.get_str(10) +
                                       " basic intervals, above --limit " + std::to_string(cfg.limit) +
                                       " (use --sample for random descent)",
                                   total);
        }
        auto it = c.words(cfg.depth, cfg.limit);
        while (auto w = it.next()) {
            rows.emplace_back(to_string(*w), c.basic_interval(*w));
        }
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second.lo() < b.second.lo(); });
    }

    switch (cfg.output) {
    case OutputFormat::text:
        out << "family: " << cfg.family_text << "\n";
        out << "level " << cfg.depth << (cfg.sample > 0 ? " (sampled)" : "") << ": " << rows.size()
            << " basic intervals\n";
        for (const auto& [w, iv] : rows) {
            out << w << " " << to_string(iv) << "\n";
        }
        break;
    case OutputFormat::csv:
        out << "word,lo,hi,length\n";
        for (const auto& [w, iv] : rows) {
            out << "\"" << w << "\"," << to_string(iv.lo()) << "," << to_string(iv.hi()) << ","
                << to_string(iv.length()) << "\n";
        }
        break;
    case OutputFormat::json: {
        Json doc;
        doc["command"] = "level";
        doc["family"] = cfg.family_text;
        doc["level"] = cfg.depth;
        doc["sampled"] = cfg.sample > 0;
        if (cfg.sample > 0) {
            doc["seed"] = cfg.seed;
        }
        doc["intervals"] = Json::array();
        for (const auto& [w, iv] : rows) {
            Json row;
            row["word"] = w;
            row["lo"] = to_string(iv.lo());
            row["hi"] = to_string(iv.hi());
            row["length"] = to_string(iv.length());
            doc["intervals"].push_back(std::move(row));
        }
        write_json(out, doc);
        break;
    }
    }
    return exit_ok;
}

inline int run_quantities(const RunConfig& cfg, std::ostream& out)
{
    const Construction c(*cfg.family, cfg.depth + 1);
    struct Row {
        std::size_t k;
        DigitRange range;
        Integer m;
        Integer count;
        Rational delta;
        Rational epsilon;
        std::string max_length; // empty when the level exceeds --limit
        std::string min_gap;
    };
    std::vector<Row> rows;
    for (std::size_t k = 1; k <= cfg.depth; ++k) {
        Row r{k, c.digit_range(k), c.m(k), c.count(k), c.delta(k), c.epsilon(k), "", ""};
        if (r.count <= Integer(static_cast<unsigned long>(cfg.limit))) {
            r.max_length = to_string(c.max_basic_length(k, cfg.limit));
            if (auto g = c.min_gap(k, cfg.limit)) {
                r.min_gap = to_string(*g);
            }
        }
        rows.push_back(std::move(r));
    }

    switch (cfg.output) {
    case OutputFormat::text:
        out << "family: " << cfg.family_text << "\n";
        for (const auto& r : rows) {
            out << "n = " << r.k << ": digits " << r.range.lo.get_str(10) << ".." << r.range.hi.get_str(10)
                << ", m_n = " << r.m.get_str(10) << ", N_n = " << r.count.get_str(10) << "\n";
            out << "  delta_n = " << to_string(r.delta) << ", epsilon_n = " << to_string(r.epsilon) << "\n";
            if (!r.max_length.empty()) {
                out << "  max |J_n| = " << r.max_length
                    << ", min gap = " << (r.min_gap.empty() ? std::string("none") : r.min_gap) << "\n";
            }
        }
        break;
    case OutputFormat::csv:
        out << "n,j_min,j_max,m_n,N_n,delta_n,epsilon_n,max_length,min_gap\n";
        for (const auto& r : rows) {
            out << r.k << "," << r.range.lo.get_str(10) << "," << r.range.hi.get_str(10) << "," << r.m.get_str(10)
                << "," << r.count.get_str(10) << "," << to_string(r.delta) << "," << to_string(r.epsilon) << ","
                << r.max_length << "," << r.min_gap << "\n";
        }
        break;
    case OutputFormat::json: {
        Json doc;
        doc["command"] = "quantities";
        doc["family"] = cfg.family_text;
        doc["levels"] = Json::array();
        for (const auto& r : rows) {
            Json row;
            row["n"] = r.k;
            row["j_min"] = r.range.lo.get_str(10);
            row["j_max"] = r.range.hi.get_str(10);
            row["m_n"] = r.m.get_str(10);
            row["N_n"] = r.count.get_str(10);
            row["delta_n"] = to_string(r.delta);
            row["epsilon_n"] = to_string(r.epsilon);
            row["max_length"] = r.max_length.empty() ? Json(nullptr) : Json(r.max_length);
            row["min_gap"] = r.min_gap.empty() ? Json(nullptr) : Json(r.min_gap);
            doc["levels"].push_back(std::move(row));
        }
        write_json(out, doc);
        break;
    }
    }
    return exit_ok;
}

// Exact N_n, delta_n, epsilon_n for the dim table while they stay within
// exact_digits decimal digits; approximate "~m.mmmmmmmmme<exp>" after that.
class ExactColumns {
public:
    ExactColumns(const SequenceFamily& f, std::size_t exact_digits) : family_{f}, cap_{exact_digits} {}

    struct Cells {
        std::string count;
        std::string delta;
        std::string epsilon;
    };

    // Must be called for n = 1, 2, ... in order.
    Cells next(std::size_t n, const LogTable& logs)
    {
        sum_log_s_ += logs.log_s(n);
        sum_log_m_ += logs.log_m(n);
        const long double neg_log_delta = sum_log_s_ + 2 * logs.log_s(n + 1) - logs.log_t(n + 1) - 2 * ln2_ld;
        const long double neg_log_eps = static_cast<long double>(n + 3) * ln2_ld + sum_log_s_ + logs.log_s(n);

        if (exact_) {
            auto [s, t] = family_.at(n);
            auto [s_next, t_next] = family_.at(n + 1);
            count_ *= floor(s + t) - floor(s);
            prod_s_ *= s;
            two_pow_ *= 2;
            delta_ = 4 * t_next / (prod_s_ * s_next * s_next);
            epsilon_ = 1 / (Rational(two_pow_ * 8) * prod_s_ * s);
            if (mpz_sizeinbase(count_.get_mpz_t(), 10) > cap_ || decimal_size(delta_) > cap_ ||
                decimal_size(epsilon_) > cap_) {
                exact_ = false;
            }
        }
        if (exact_) {
            return {count_.get_str(10), to_string(delta_), to_string(epsilon_)};
        }
        return {approximate(sum_log_m_), approximate(-neg_log_delta), approximate(-neg_log_eps)};
    }

private:
    const SequenceFamily& family_;
    std::size_t cap_;
    bool exact_ = true;
    Integer count_ = 1;
    Integer two_pow_ = 1;
    Rational prod_s_ = 1;
    Rational delta_;
    Rational epsilon_;
    long double sum_log_s_ = 0;
    long double sum_log_m_ = 0;
};

inline int run_dim(const RunConfig& cfg, std::ostream& out)
{
    const LogTable logs(*cfg.family, cfg.n_max + 1);
    const auto report = estimate_dim(logs, cfg.n_max, cfg.tail_window);
    ExactColumns exact(*cfg.family, cfg.exact_digits);

    auto lower_text = [&](std::size_t i) {
        return report.lower[i] ? decimal(*report.lower[i]) : std::string();
    };

    switch (cfg.output) {
    case OutputFormat::text: {
        out << "family: " << cfg.family_text << "\n";
        out << "n_max: " << report.n_max << ", tail window: " << report.tail_window << "\n";
        out << "F_n at n_max: " << decimal(report.formula.back()) << "\n";
        out << "upper bound quotient at n_max: " << decimal(report.upper.back()) << "\n";
        out << "lower bound quotient at n_max: " << lower_text(report.n_max - 1) << "\n";
        out << "estimated_dim: " << decimal(report.estimated_dim) << "\n";
        out << "monotone tail: " << (report.monotone_tail ? "true" : "false") << "\n";
        if (!report.monotone_tail) {
            out << "warning: F_n is not monotone over the tail window; the estimate may not reflect the liminf\n";
        }
        out << "note: " << estimate_caveat << "\n";
        break;
    }
    case OutputFormat::csv:
        out << "n,F_n,upper_n,lower_n,N_n,delta_n,epsilon_n\n";
        for (std::size_t i = 0; i < report.n_max; ++i) {
            const auto cells = exact.next(i + 1, logs);
            out << i + 1 << "," << decimal(report.formula[i]) << "," << decimal(report.upper[i]) << ","
                << lower_text(i) << "," << cells.count << "," << cells.delta << "," << cells.epsilon << "\n";
        }
        break;
    case OutputFormat::json: {
        Json doc;
        doc["command"] = "dim";
        doc["family"] = cfg.family_text;
        doc["n_max"] = report.n_max;
        doc["tail_window"] = report.tail_window;
        doc["estimated_dim"] = decimal(report.estimated_dim);
        doc["tail_min_F"] = decimal(report.tail_min_formula);
        doc["monotone_tail"] = report.monotone_tail;
        doc["note"] = estimate_caveat;
        Json n = Json::array(), f = Json::array(), up = Json::array(), lo = Json::array();
        Json count = Json::array(), delta = Json::array(), eps = Json::array();
        for (std::size_t i = 0; i < report.n_max; ++i) {
            const auto cells = exact.next(i + 1, logs);
            n.push_back(i + 1);
            f.push_back(decimal(report.formula[i]));
            up.push_back(decimal(report.upper[i]));
            lo.push_back(report.lower[i] ? Json(decimal(*report.lower[i])) : Json(nullptr));
            count.push_back(cells.count);
            delta.push_back(cells.delta);
            eps.push_back(cells.epsilon);
        }
        doc["n"] = std::move(n);
        doc["F"] = std::move(f);
        doc["upper"] = std::move(up);
        doc["lower"] = std::move(lo);
        doc["N"] = std::move(count);
        doc["delta"] = std::move(delta);
        doc["epsilon"] = std::move(eps);
        write_json(out, doc);
        break;
    }
    }
    return exit_ok;
}

inline int run_cover_fit(const RunConfig& cfg, std::ostream& out)
{
    const auto fit = empirical_cover_fit(*cfg.family, cfg.depths, cfg.limit);
    switch (cfg.output) {
    case OutputFormat::text:
        out << "family: " << cfg.family_text << "\n";
        for (const auto& p : fit.points) {
            out << "n = " << p.depth << ": N_n = " << p.count.get_str(10) << ", max |J_n| = " << to_string(p.max_length)
                << "\n";
        }
        out << "slope: " << decimal(fit.slope) << "\n";
        out << "intercept: " << decimal(fit.intercept) << "\n";
        break;
    case OutputFormat::csv:
        out << "n,N_n,max_length,log_N_n,neg_log_max_length\n";
        for (const auto& p : fit.points) {
            out << p.depth << "," << p.count.get_str(10) << "," << to_string(p.max_length) << ","
                << decimal(p.log_count) << "," << decimal(p.neg_log_length) << "\n";
        }
        break;
    case OutputFormat::json: {
        Json doc;
        doc["command"] = "cover-fit";
        doc["family"] = cfg.family_text;
        doc["slope"] = decimal(fit.slope);
        doc["intercept"] = decimal(fit.intercept);
        doc["points"] = Json::array();
        for (const auto& p : fit.points) {
            Json row;
            row["n"] = p.depth;
            row["N_n"] = p.count.get_str(10);
            row["max_length"] = to_string(p.max_length);
            row["log_N_n"] = decimal(p.log_count);
            row["neg_log_max_length"] = decimal(p.neg_log_length);
            doc["points"].push_back(std::move(row));
        }
        write_json(out, doc);
        break;
    }
    }
    return exit_ok;
}

} // namespace detail

/// Dispatches a parsed configuration. Returns 0 on success, 2 when the
/// family violates the growth conditions (or cannot be evaluated), 1 for
/// requests that cannot be served as given.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        switch (cfg.command) {
        case Command::digits: return detail::run_digits(cfg, out);
        case Command::cylinder: return detail::run_cylinder(cfg, out);
        case Command::check: return detail::run_check(cfg, out);
        case Command::level: return detail::run_level(cfg, out);
        case Command::quantities: return detail::run_quantities(cfg, out);
        case Command::dim: return detail::run_dim(cfg, out);
        case Command::cover_fit: return detail::run_cover_fit(cfg, out);
        }
    } catch (const condition_violation& e) {
        err << "condition violation: " << e.what() << "\n";
        return exit_condition;
    } catch (const evaluation_error& e) {
        err << "evaluation error: " << e.what() << "\n";
        return exit_condition;
    } catch (const size_limit_error& e) {
        err << "size limit: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

/// parse_config + run with the exit-code contract applied to usage errors.
inline int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    try {
        cfg = parse_config(args);
    } catch (const help_requested& e) {
        out << e.what();
        return exit_ok;
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }
    return run(cfg, out, err);
}

} // namespace engel::cli

#endif
