#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rtshuffle/numeric.hpp"
#include "rtshuffle/partition.hpp"

namespace rtshuffle {

/// Arithmetic used for the main spectral sum. Exact mode keeps every term as
/// a big integer over the common denominator n^(2t); float mode uses 113-bit
/// binary floats and reports a rounding bound alongside the value.
enum class Mode { exact, floating };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

inline constexpr int kMaxExactN = 30;
inline constexpr int kMaxFloatN = 45;
inline constexpr int kMaxOracleN = 8;
inline constexpr long kMaxOracleSteps = 50;

/// floor(n ln(n) / 2 + c n). Throws ArgumentError if that is negative or
/// n < 2.
long mixing_time_steps(int n, double c);

/// Deck size and step count of one walk; `c` is kept when the step count was
/// derived from the window parameter.
struct WalkParams {
  int n = 2;
  long t = 0;
  std::optional<double> c;

  static WalkParams at_steps(int n, long t);
  static WalkParams at_window(int n, double c);
};

/// Law of the walk aggregated over conjugacy classes: total mass of each
/// class, keyed by cycle type.
using ClassDistribution = std::map<Partition, Rational>;

/// A total-variation value. `exact` is present in exact mode;
/// `rounding_error` bounds the float-mode rounding (0 in exact mode).
struct TvValue {
  double value = 0.0;
  std::optional<Rational> exact;
  double rounding_error = 0.0;
};

/// Main term and certificate for the spectral sum restricted to
/// λ_1 >= n - M (trivial representation excluded).
struct TruncatedTv {
  int truncation = 0;
  TvValue main;
  Rational error_bound_exact;  ///< half the excluded sum of d_λ |s_λ|^t
  double error_bound = 0.0;    ///< error_bound_exact plus main.rounding_error
};

/// TV distance between the law after t steps and the uniform law, from the
/// full Fourier expansion. Exact mode for n <= kMaxExactN, float mode for
/// n <= kMaxFloatN.
TvValue exact_tv_fourier(const WalkParams& params, Mode mode);

/// Main term over S_M = {λ ≠ (n) : λ_1 >= n - M} with the certificate
/// |TV - main| <= error_bound. Requires 1 <= M; M >= n - 1 is the full sum.
TruncatedTv truncated_tv(const WalkParams& params, int truncation, Mode mode);

/// sum over λ ⊢ n with λ_1 <= n - M of d_λ |s_λ|^t (L1 units, no factor
/// 1/2), computed exactly and rounded once to double. n <= kMaxFloatN.
Rational remainder_bound_exact(const WalkParams& params, int truncation);
double remainder_bound(const WalkParams& params, int truncation);

/// Smallest M >= 1 whose truncated_tv certificate is at most `target`
/// (TV units, exact arithmetic).
int smallest_truncation(const WalkParams& params, double target);

/// Brute-force law of the walk on all n! permutations by repeated
/// convolution with the step distribution, in exact rationals.
struct OracleResult {
  ClassDistribution classes;
  Rational tv;
};

OracleResult convolution_oracle(int n, long t);

/// Class masses reconstructed from the Fourier side:
/// |C_μ| sum_λ (d_λ / n!) s_λ^t χ^λ(μ), all λ including the trivial one.
ClassDistribution fourier_class_distribution(const WalkParams& params);

/// One row of a limit-profile curve.
struct ProfilePoint {
  int n = 0;
  double c = 0.0;
  long t = 0;
  double tv_main = 0.0;
  double error_bound = 0.0;
  double tv_limit = 0.0;
  Mode mode = Mode::exact;
};

std::vector<ProfilePoint> profile_curve(int n, const std::vector<double>& c_values,
                                        int truncation, Mode mode);

}  // namespace rtshuffle
