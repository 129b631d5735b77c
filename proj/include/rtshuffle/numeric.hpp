#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace rtshuffle {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when an argument violates an operation's precondition.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a request exceeds a declared size limit (n too large for
/// exact enumeration and the like).
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// num / den in lowest terms. Requires den != 0. (mpq_class's two-argument
/// constructor does not reduce, and comparisons assume reduced operands.)
Rational fraction(const Integer& num, const Integer& den);

Integer factorial(unsigned n);

/// Binomial coefficient with the falling-factorial convention:
/// binomial(z, r) = z (z-1) ... (z-r+1) / r!, which is 0 for 0 <= z < r.
Integer binomial(long z, unsigned r);
Rational binomial(const Rational& z, unsigned r);

Integer pow(const Integer& base, unsigned long exponent);
Rational pow(const Rational& base, unsigned long exponent);

/// Natural log of a positive big integer, accurate to double precision even
/// when the value is far outside the double range.
double log(const Integer& value);

/// Nearest double to an exact rational (0 on underflow).
double to_double(const Rational& value);

/// Renders a real with 17 significant digits, the format used by every file
/// the tools write.
std::string format_real(double value);

}  // namespace rtshuffle
