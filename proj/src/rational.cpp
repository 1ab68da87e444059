#include "meritfair/rational.hpp"

#include <charconv>
#include <limits>

#include "meritfair/error.hpp"

namespace meritfair {

namespace {

constexpr std::size_t kMaxFractionDigits = 12;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad(std::string_view text, const char* why) {
    throw Error(ErrorCode::Parse, "invalid number '" + std::string(text) + "': " + why);
}

std::int64_t parse_int(std::string_view digits, std::string_view whole) {
    if (digits.empty()) bad(whole, "missing digits");
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec == std::errc::result_out_of_range) bad(whole, "out of range");
    if (ec != std::errc() || ptr != digits.data() + digits.size()) bad(whole, "not an integer");
    return v;
}

bool all_digits(std::string_view s) {
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

}  // namespace

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) noexcept {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

Rational parse_rational(std::string_view text) {
    const std::string_view s = trim(text);
    if (s.empty()) bad(text, "empty");

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto num = parse_int(trim(s.substr(0, slash)), text);
        const auto den = parse_int(trim(s.substr(slash + 1)), text);
        if (den == 0) bad(text, "zero denominator");
        return Rational(num, den);
    }

    std::string_view body = s;
    bool negative = false;
    if (body.front() == '+' || body.front() == '-') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto dot = body.find('.');
    std::string_view int_part = body.substr(0, dot);
    std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) bad(text, "missing digits");
    if (!all_digits(int_part) || !all_digits(frac_part)) bad(text, "unexpected character");
    while (!frac_part.empty() && frac_part.back() == '0') frac_part.remove_suffix(1);
    if (frac_part.size() > kMaxFractionDigits) bad(text, "too many fractional digits");

    const std::int64_t whole = int_part.empty() ? 0 : parse_int(int_part, text);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const std::int64_t frac = frac_part.empty() ? 0 : parse_int(frac_part, text);
    if (whole > (std::numeric_limits<std::int64_t>::max() - frac) / scale) bad(text, "out of range");

    Rational r(whole * scale + frac, scale);
    return negative ? -r : r;
}

bool is_probability(const Rational& r) noexcept { return r >= Rational(0) && r <= Rational(1); }

Rational parse_probability(std::string_view text) {
    Rational r = parse_rational(text);
    if (!is_probability(r))
        throw Error(ErrorCode::Domain, "probability '" + std::string(text) + "' outside [0, 1]");
    return r;
}

}  // namespace meritfair
