#include "conicflow/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace conicflow {

namespace {

using boost::multiprecision::cpp_int;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// Signed integer or finite decimal, no exponent.
Rational parse_decimal(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    const auto dot = s.find('.');
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
        throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
        (dot != std::string_view::npos && frac_part.empty()))
        throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");

    cpp_int num{0};
    for (char c : int_part) num = num * 10 + (c - '0');
    cpp_int den{1};
    for (char c : frac_part) {
        num = num * 10 + (c - '0');
        den *= 10;
    }
    Rational r(num, den);
    return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty rational");
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return parse_decimal(s, s);

    const Rational num = parse_decimal(trim(s.substr(0, slash)), s);
    const Rational den = parse_decimal(trim(s.substr(slash + 1)), s);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    return num / den;
}

std::string to_string(const Rational& r) {
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational exact_rational(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
    int exponent = 0;
    const double mantissa = std::frexp(x, &exponent);
    // 53 bits of mantissa scaled to an integer.
    const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
    exponent -= 53;
    Rational r{cpp_int(scaled)};
    if (exponent > 0) {
        r *= Rational(cpp_int(1) << exponent);
    } else if (exponent < 0) {
        r /= Rational(cpp_int(1) << -exponent);
    }
    return r;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
    std::vector<Rational> out;
    std::string_view rest = trim(text);
    if (rest.empty()) return out;
    while (true) {
        const auto comma = rest.find(',');
        out.push_back(parse_rational(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

std::string to_string(const std::vector<Rational>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += to_string(values[i]);
    }
    return out;
}

}  // namespace conicflow
