#include "certquad/rational.hpp"

#include <sstream>

namespace certquad {

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

namespace {

// The bignum string constructor reads "0"/"0x" prefixes as base markers,
// so digit strings must lose leading zeros first.
BigInt digits_to_bigint(std::string digits) {
    const auto nz = digits.find_first_not_of('0');
    if (nz == std::string::npos) return BigInt(0);
    return BigInt(digits.substr(nz));
}

}  // namespace

Rational rational_from_decimal(const std::string& text) {
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(digits_to_bigint(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    BigInt den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    return Rational(digits_to_bigint(digits), den);
}

}  // namespace certquad
