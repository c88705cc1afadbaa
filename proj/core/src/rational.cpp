#include "isg/rational.hpp"

#include <cctype>
#include <limits>

#include "isg/error.hpp"

namespace isg {
namespace {

[[noreturn]] void bad(std::string_view text) {
    throw Error(ErrorCode::ParseError, "not an exact rational: '" + std::string(text) + "'");
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Parses a run of decimal digits, appending them to `acc` (acc = acc*10 + d).
bool append_digits(std::string_view digits, std::int64_t& acc) {
    constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        const int d = c - '0';
        if (acc > (kMax - d) / 10) return false;
        acc = acc * 10 + d;
    }
    return true;
}

}  // namespace

Rational parse_rational(std::string_view original) {
    std::string_view text = trim(original);
    if (text.empty()) bad(original);

    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (text.empty()) bad(original);

    std::int64_t num = 0;
    std::int64_t den = 1;
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto lhs = text.substr(0, slash);
        const auto rhs = text.substr(slash + 1);
        den = 0;
        if (lhs.empty() || rhs.empty() || !append_digits(lhs, num) || !append_digits(rhs, den)) {
            bad(original);
        }
        if (den == 0) bad(original);
    } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        const auto whole = text.substr(0, dot);
        const auto frac = text.substr(dot + 1);
        if (whole.empty() && frac.empty()) bad(original);
        if (!append_digits(whole, num) || !append_digits(frac, num)) bad(original);
        for (std::size_t i = 0; i < frac.size(); ++i) {
            if (den > std::numeric_limits<std::int64_t>::max() / 10) bad(original);
            den *= 10;
        }
    } else if (!append_digits(text, num)) {
        bad(original);
    }
    return Rational(negative ? -num : num, den);
}

std::string format_rational(const Rational& value) {
    if (value.denominator() == 1) return std::to_string(value.numerator());
    return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

}  // namespace isg
