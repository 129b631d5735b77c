#pragma once

#include <string>

#include "rtshuffle/numeric.hpp"
#include "rtshuffle/partition.hpp"

namespace rtshuffle {

/// T_j(z) = sum_{i=0}^{j} C(z, j-i) (-1)^i / i!, with the falling-factorial
/// binomial (so C(z, r) = 0 for integers 0 <= z < r). Requires j >= 1.
Rational tj_eval(int j, const Rational& z);

/// f_c(x) = exp(-e^{-2c}) (1 + e^{-2c})^x - 1.
double fc_eval(double c, int x);

/// Partial sum of sum_j e^{-2jc} T_j(N) up to j = J against f_c(N), both in
/// 330-bit floating point. `converged` is false when the last included term
/// is still above 1e-12 in magnitude (too few terms for very negative c).
struct SeriesCheck {
  double residual = 0.0;
  double partial_sum = 0.0;
  double closed_form = 0.0;
  bool converged = true;
};

SeriesCheck series_vs_closed_form(double c, int N, int J);

/// TV distance between Poisson laws of rates a and b, from the single
/// crossing point of the two densities and regularized incomplete gamma
/// functions (no series truncation).
double poisson_tv(double a, double b);
/// 1 - poisson_tv(a, b) = sum_r min(P_a(r), P_b(r)), computed directly so
/// that it keeps full relative precision when the laws are far apart.
double poisson_overlap(double a, double b);

/// d_TV(Poiss(1 + e^{-2c}), Poiss(1)).
double limit_profile(double c);

/// E|f_c(X)| for X ~ Poiss(1), by direct summation over the Poisson law.
double poisson_expected_abs_fc(double c);

/// Character-sum identity for the representations with λ_1 = n - j:
/// (1/j!) sum_{λ* ⊢ j} d_{λ*} χ^{(n-j, λ*)}(μ) against T_j(number of fixed
/// points of μ). The identity is only claimed when μ has a cycle longer
/// than j and n >= 2j; otherwise `applicable` is false and `reason` says why.
struct Lemma43Result {
  bool applicable = false;
  std::string reason;
  Rational lhs;
  Rational rhs;
  bool equal = false;
};

Lemma43Result lemma43_check(int n, int j, const Partition& mu);

/// sum_{m=0}^{n} P(N_1 = m) |f_c(m)| for a uniform permutation of S_n
/// (L1 units). With tv_units the value is halved.
double mixed_expectation(int n, double c, bool tv_units = false);

}  // namespace rtshuffle
