#include "rtshuffle/numeric.hpp"

#include <cmath>
#include <cstdio>

namespace rtshuffle {

Rational fraction(const Integer& num, const Integer& den) {
  if (den == 0) {
    throw ArgumentError("fraction: zero denominator");
  }
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Integer factorial(unsigned n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Integer binomial(long z, unsigned r) {
  if (z >= 0) {
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(z), r);
    return out;
  }
  Integer out;
  mpz_bin_ui(out.get_mpz_t(), Integer(z).get_mpz_t(), r);
  return out;
}

Rational binomial(const Rational& z, unsigned r) {
  if (z.get_den() == 1 && z.get_num().fits_slong_p()) {
    return Rational(binomial(z.get_num().get_si(), r));
  }
  Rational out = 1;
  for (unsigned i = 0; i < r; ++i) {
    out *= (z - i);
    out /= (i + 1);
  }
  return out;
}

Integer pow(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational pow(const Rational& base, unsigned long exponent) {
  Rational out(pow(base.get_num(), exponent), pow(base.get_den(), exponent));
  out.canonicalize();
  return out;
}

double log(const Integer& value) {
  if (sgn(value) <= 0) {
    throw ArgumentError("log of a non-positive integer");
  }
  long exp2 = 0;
  const double mantissa = mpz_get_d_2exp(&exp2, value.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exp2) * std::log(2.0);
}

double to_double(const Rational& value) {
  if (sgn(value) == 0) {
    return 0.0;
  }
  // mpq_get_d truncates; dividing the scaled mantissas rounds correctly
  // to within one ulp and survives operands outside the double range.
  long en = 0;
  long ed = 0;
  const double mn = mpz_get_d_2exp(&en, value.get_num().get_mpz_t());
  const double md = mpz_get_d_2exp(&ed, value.get_den().get_mpz_t());
  return std::ldexp(mn / md, static_cast<int>(en - ed));
}

std::string format_real(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

}  // namespace rtshuffle
