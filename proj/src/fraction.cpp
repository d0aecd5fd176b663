#include "credo/fraction.hpp"

#include <charconv>
#include <cmath>

#include "credo/error.hpp"

namespace credo {

std::string_view to_string(Errc code)
{
    switch (code) {
    case Errc::invalid_parameter: return "invalid-parameter";
    case Errc::invalid_resolution: return "invalid-resolution";
    case Errc::resolution_not_available: return "resolution-not-available";
    case Errc::judgment_unavailable: return "judgment-unavailable";
    case Errc::domain_mismatch: return "domain-mismatch";
    case Errc::enumeration_cap_exceeded: return "enumeration-cap-exceeded";
    case Errc::precondition_violated: return "precondition-violated";
    case Errc::no_solution: return "no-solution";
    case Errc::not_found: return "not-found";
    case Errc::parse_error: return "parse-error";
    case Errc::unsupported_version: return "unsupported-version";
    }
    return "unknown";
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole)
{
    std::int64_t v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw Error(Errc::parse_error, "not a fraction: '" + std::string(whole) + "'");
    }
    return v;
}

}  // namespace

Fraction parse_fraction(std::string_view text)
{
    auto trimmed = text;
    while (!trimmed.empty() && trimmed.front() == ' ') trimmed.remove_prefix(1);
    while (!trimmed.empty() && trimmed.back() == ' ') trimmed.remove_suffix(1);

    if (auto slash = trimmed.find('/'); slash != std::string_view::npos) {
        auto num = parse_int(trimmed.substr(0, slash), text);
        auto den = parse_int(trimmed.substr(slash + 1), text);
        if (den == 0) throw Error(Errc::parse_error, "zero denominator in '" + std::string(text) + "'");
        return Fraction(num, den);
    }
    if (auto dot = trimmed.find('.'); dot != std::string_view::npos) {
        auto int_part = trimmed.substr(0, dot);
        auto frac_part = trimmed.substr(dot + 1);
        if (frac_part.size() > 17) throw Error(Errc::parse_error, "too many decimals in '" + std::string(text) + "'");
        bool negative = !int_part.empty() && int_part.front() == '-';
        if (negative) int_part.remove_prefix(1);
        std::int64_t whole = int_part.empty() ? 0 : parse_int(int_part, text);
        std::int64_t digits = frac_part.empty() ? 0 : parse_int(frac_part, text);
        if (!frac_part.empty() && (frac_part.front() == '-' || frac_part.front() == '+')) {
            throw Error(Errc::parse_error, "not a fraction: '" + std::string(text) + "'");
        }
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
        Fraction f = Fraction(whole) + Fraction(digits, scale);
        return negative ? -f : f;
    }
    return Fraction(parse_int(trimmed, text));
}

std::string format_fraction(const Fraction& f)
{
    if (f.denominator() == 1) return std::to_string(f.numerator());
    return std::to_string(f.numerator()) + "/" + std::to_string(f.denominator());
}

Fraction dyadic_from_double(double x, int bits)
{
    if (!std::isfinite(x)) throw Error(Errc::invalid_parameter, "non-finite value");
    const auto scale = static_cast<std::int64_t>(1) << bits;
    return Fraction(static_cast<std::int64_t>(std::llround(x * static_cast<double>(scale))), scale);
}

}  // namespace credo
