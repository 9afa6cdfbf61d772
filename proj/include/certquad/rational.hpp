#ifndef CERTQUAD_RATIONAL_HPP
#define CERTQUAD_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace certquad {

// Arbitrary-precision rational.  Derivative rescaling multiplies by k!
// (k up to 32), which overflows every fixed-width integer, so the exact
// path runs on bignums throughout.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// "p" or "p/q" with the sign on the numerator.
std::string to_string(const Rational& r);

// Exact rational value of a decimal literal, e.g. "0.25" -> 1/4.
Rational rational_from_decimal(const std::string& text);

}  // namespace certquad

#endif
