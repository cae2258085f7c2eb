#include "syzmirror/rational.hpp"

#include <cctype>

#include "syzmirror/error.hpp"

namespace syzmirror {

namespace {

bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    const auto den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
        throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
    }
    Integer n(std::string(num.front() == '+' ? num.substr(1) : num));
    Integer d{std::string(den)};
    if (d == 0) {
        throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    }
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational &value)
{
    return value.get_str();
}

Integer factorial(unsigned long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Rational make_rational(long num, long den)
{
    if (den == 0) {
        throw Error(ErrorCode::InvalidArgument, "zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

} // namespace syzmirror
