#include "rtshuffle/limit.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>

#include "rtshuffle/characters.hpp"
#include "rtshuffle/perm_stats.hpp"

namespace rtshuffle {

namespace {

using Wide = boost::multiprecision::cpp_bin_float_100;

Wide to_wide(const Rational& q) {
  return Wide(q.get_num().get_str()) / Wide(q.get_den().get_str());
}

}  // namespace

Rational tj_eval(int j, const Rational& z) {
  if (j < 1) {
    throw ArgumentError("tj_eval: j must be positive");
  }
  Rational total = 0;
  Integer i_factorial = 1;
  for (int i = 0; i <= j; ++i) {
    if (i > 0) {
      i_factorial *= i;
    }
    Rational term = binomial(z, static_cast<unsigned>(j - i)) / Rational(i_factorial);
    if (i % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  total.canonicalize();
  return total;
}

double fc_eval(double c, int x) {
  const double drift = std::exp(-2.0 * c);
  return std::exp(-drift + x * std::log1p(drift)) - 1.0;
}

SeriesCheck series_vs_closed_form(double c, int N, int J) {
  if (N < 0 || J < 1) {
    throw ArgumentError("series_vs_closed_form: need N >= 0 and J >= 1");
  }
  const Wide drift = boost::multiprecision::exp(Wide(-2.0 * c));
  const Wide closed = boost::multiprecision::exp(-drift) * boost::multiprecision::pow(1 + drift, N) - 1;
  Wide partial = 0;
  Wide power = 1;
  Wide last = 0;
  for (int j = 1; j <= J; ++j) {
    power *= drift;
    last = power * to_wide(tj_eval(j, Rational(N)));
    partial += last;
  }
  SeriesCheck out;
  out.residual = static_cast<double>(boost::multiprecision::abs(partial - closed));
  out.partial_sum = static_cast<double>(partial);
  out.closed_form = static_cast<double>(closed);
  out.converged = boost::multiprecision::abs(last) < 1e-12;
  return out;
}

namespace {

// For a > b the densities cross once: Poiss(a) puts more mass than Poiss(b)
// exactly on {X >= r0}. Returns r0, or 0 when the laws coincide.
double crossing_point(double a, double b) {
  return std::ceil((a - b) / std::log1p((a - b) / b));
}

void check_rates(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ArgumentError("poisson_tv: rates must be positive and finite");
  }
}

}  // namespace

double poisson_tv(double a, double b) {
  check_rates(a, b);
  if (a == b) {
    return 0.0;
  }
  if (a < b) {
    std::swap(a, b);
  }
  // P_a(X >= r0) - P_b(X >= r0), with P(X < r0) = Q(r0, rate)
  const double r0 = crossing_point(a, b);
  const double tv = boost::math::gamma_q(r0, b) - boost::math::gamma_q(r0, a);
  return std::clamp(tv, 0.0, 1.0);
}

double poisson_overlap(double a, double b) {
  check_rates(a, b);
  if (a == b) {
    return 1.0;
  }
  if (a < b) {
    std::swap(a, b);
  }
  const double r0 = crossing_point(a, b);
  return std::clamp(boost::math::gamma_q(r0, a) + boost::math::gamma_p(r0, b), 0.0, 1.0);
}

double limit_profile(double c) {
  const double rate = 1.0 + std::exp(-2.0 * c);
  return std::isfinite(rate) ? poisson_tv(rate, 1.0) : 1.0;
}

double poisson_expected_abs_fc(double c) {
  double total = 0.0;
  for (int r = 0;; ++r) {
    const double p = poisson_pmf(1.0, r);
    const double term = p * std::abs(fc_eval(c, r));
    total += term;
    // |f_c(r)| p(r) decays like (1 + e^{-2c})^r / r!
    if (r > 2.0 * (1.0 + std::exp(-2.0 * c)) + 10 && term < 1e-18) {
      break;
    }
  }
  return total;
}

Lemma43Result lemma43_check(int n, int j, const Partition& mu) {
  Lemma43Result out;
  if (j < 1) {
    throw ArgumentError("lemma43_check: j must be positive");
  }
  if (mu.size() != n) {
    throw ArgumentError("lemma43_check: class " + mu.to_string() + " is not a partition of " +
                        std::to_string(n));
  }
  if (n < 2 * j) {
    out.reason = "n < 2j: (n-j, λ*) is not a partition for every λ* ⊢ j";
    return out;
  }
  if (mu.first_row() <= j) {
    out.reason = "every cycle of the class has length <= j";
    return out;
  }
  out.applicable = true;
  Integer sum = 0;
  for (const auto& tail : enumerate_partitions(j)) {
    sum += dimension(tail) * mn_character(Partition::with_first_row(n - j, tail), mu);
  }
  out.lhs = Rational(sum, factorial(static_cast<unsigned>(j)));
  out.lhs.canonicalize();
  out.rhs = tj_eval(j, Rational(mu.multiplicity(1)));
  out.equal = out.lhs == out.rhs;
  return out;
}

double mixed_expectation(int n, double c, bool tv_units) {
  if (n < 1) {
    throw ArgumentError("mixed_expectation: need n >= 1");
  }
  double total = 0.0;
  for (int m = 0; m <= n; ++m) {
    total += to_double(fixed_point_law(n, m)) * std::abs(fc_eval(c, m));
  }
  return tv_units ? 0.5 * total : total;
}

}  // namespace rtshuffle
