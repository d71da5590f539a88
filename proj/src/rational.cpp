#include "eqtk/rational.hpp"

#include "eqtk/errors.hpp"

#include <cctype>
#include <cmath>

namespace eqtk {

namespace {

Rational pow10(int exponent) {
    Rational result = 1;
    const Rational ten = 10;
    for (int i = 0; i < std::abs(exponent); ++i) result *= ten;
    return exponent >= 0 ? result : Rational(1) / result;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty rational literal");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_rational(text.substr(0, slash));
        Rational den = parse_rational(text.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        return num / den;
    }

    bool negative = false;
    std::string_view body = text;
    if (body.front() == '+' || body.front() == '-') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    int exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = body.substr(e + 1);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        if (!all_digits(exp_text) || exp_text.size() > 4) {
            throw ParseError("bad exponent in '" + std::string(text) + "'");
        }
        exponent = std::stoi(std::string(exp_text)) * (exp_negative ? -1 : 1);
        body = body.substr(0, e);
    }

    std::string digits;
    if (auto dot_pos = body.find('.'); dot_pos != std::string_view::npos) {
        std::string_view whole = body.substr(0, dot_pos);
        std::string_view frac = body.substr(dot_pos + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac))) {
            throw ParseError("bad decimal literal '" + std::string(text) + "'");
        }
        digits = std::string(whole) + std::string(frac);
        exponent -= static_cast<int>(frac.size());
    } else {
        if (!all_digits(body)) throw ParseError("bad rational literal '" + std::string(text) + "'");
        digits = std::string(body);
    }

    // a leading zero would make the string constructor read octal
    const auto first = digits.find_first_not_of('0');
    digits = first == std::string::npos ? "0" : digits.substr(first);
    Rational value{BigInt(digits)};
    value *= pow10(exponent);
    return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& value) {
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational from_double(double value) {
    if (!std::isfinite(value)) throw NumericalError("cannot convert non-finite double to rational");
    // mpq_set_d is exact for every finite double.
    return Rational(value);
}

Rational dot(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw DimensionError("dot product of vectors with different lengths");
    Rational sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

RationalVector to_rational(const std::vector<std::int64_t>& coords) {
    RationalVector out;
    out.reserve(coords.size());
    for (auto c : coords) out.emplace_back(static_cast<long long>(c));
    return out;
}

}  // namespace eqtk
