#include "scientrank/rational.hpp"

#include "scientrank/error.hpp"

#include <cctype>

namespace scientrank {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

BigInt parse_digits(std::string_view s) {
    BigInt out = 0;
    for (char c : s) out = out * 10 + (c - '0');
    return out;
}

BigInt pow10(int n) {
    BigInt out = 1;
    for (int i = 0; i < n; ++i) out *= 10;
    return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational out;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw DataError("not a rational number: '" + std::string(text) + "'");
        }
        BigInt d = parse_digits(den);
        if (d == 0) throw DataError("zero denominator: '" + std::string(text) + "'");
        out = Rational(parse_digits(num), d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto whole = s.substr(0, dot);
        auto frac = s.substr(dot + 1);
        if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) {
            throw DataError("not a decimal number: '" + std::string(text) + "'");
        }
        BigInt w = whole.empty() ? BigInt(0) : parse_digits(whole);
        BigInt scale = pow10(static_cast<int>(frac.size()));
        out = Rational(w * scale + parse_digits(frac), scale);
    } else {
        if (!all_digits(s)) throw DataError("not a number: '" + std::string(text) + "'");
        out = Rational(parse_digits(s));
    }
    return negative ? Rational(-out) : out;
}

std::string to_exact_string(const Rational& value) {
    if (is_integer(value)) return numerator(value).str();
    return numerator(value).str() + "/" + denominator(value).str();
}

std::string to_fixed(const Rational& value, int decimals, char separator) {
    if (decimals < 0) throw ConfigError("decimals must be >= 0");
    const BigInt scale = pow10(decimals);
    // floor(value * scale + 1/2)
    Rational shifted = value * scale + Rational(1, 2);
    BigInt num = numerator(shifted);
    BigInt den = denominator(shifted);
    BigInt q = num / den;
    if (num < 0 && q * den != num) q -= 1;

    bool negative = q < 0;
    BigInt mag = negative ? BigInt(-q) : q;
    std::string digits = mag.str();
    if (decimals > 0) {
        if (digits.size() <= static_cast<std::size_t>(decimals)) {
            digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
        }
        digits.insert(digits.size() - static_cast<std::size_t>(decimals), 1, separator);
    }
    return negative ? "-" + digits : digits;
}

double to_double(const Rational& value) {
    return value.convert_to<double>();
}

bool is_integer(const Rational& value) {
    return denominator(value) == 1;
}

}  // namespace scientrank
