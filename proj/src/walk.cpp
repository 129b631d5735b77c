#include "rtshuffle/walk.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "rtshuffle/characters.hpp"
#include "rtshuffle/limit.hpp"
#include "rtshuffle/parallel.hpp"
#include "rtshuffle/perm_stats.hpp"

namespace rtshuffle {

std::string to_string(Mode mode) { return mode == Mode::exact ? "exact" : "float"; }

Mode parse_mode(const std::string& text) {
  if (text == "exact") {
    return Mode::exact;
  }
  if (text == "float") {
    return Mode::floating;
  }
  throw ArgumentError("unknown mode '" + text + "' (expected exact or float)");
}

long mixing_time_steps(int n, double c) {
  if (n < 2) {
    throw ArgumentError("mixing_time_steps: need n >= 2");
  }
  const double value = 0.5 * n * std::log(static_cast<double>(n)) + c * n;
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ArgumentError("mixing_time_steps: n ln(n)/2 + c n is negative for n = " +
                        std::to_string(n) + ", c = " + format_real(c));
  }
  return static_cast<long>(std::floor(value));
}

WalkParams WalkParams::at_steps(int n, long t) {
  if (n < 2) {
    throw ArgumentError("WalkParams: need n >= 2");
  }
  if (t < 0) {
    throw ArgumentError("WalkParams: negative step count");
  }
  return WalkParams{n, t, std::nullopt};
}

WalkParams WalkParams::at_window(int n, double c) {
  return WalkParams{n, mixing_time_steps(n, c), c};
}

namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

// Unit roundoff of the float-mode arithmetic.
const double kQuadUnit = std::ldexp(1.0, -113);

Quad to_quad(const Integer& v) {
  if (v.fits_slong_p()) {
    return Quad(v.get_si());
  }
  return Quad(v.get_str());
}

// gamma_k = k u / (1 - k u), the usual bound for k successive roundings.
double gamma_bound(double k) { return k * kQuadUnit / (1.0 - k * kQuadUnit); }

void check_size(const WalkParams& p, Mode mode) {
  if (p.n < 2) {
    throw ArgumentError("walk: need n >= 2");
  }
  if (p.t < 0) {
    throw ArgumentError("walk: negative step count");
  }
  const int limit = mode == Mode::exact ? kMaxExactN : kMaxFloatN;
  if (p.n > limit) {
    throw SizeLimitError("walk: n = " + std::to_string(p.n) + " exceeds the " + to_string(mode) +
                         "-mode limit " + std::to_string(limit));
  }
}

// d_λ and the eigenvalue numerator a_λ (s_λ = a_λ / n^2) for every λ ⊢ n,
// in reverse lexicographic order.
struct Spectrum {
  std::vector<Partition> reps;
  std::vector<Integer> dims;
  std::vector<long> numerators;
};

Spectrum full_spectrum(int n) {
  Spectrum s;
  s.reps = enumerate_partitions(n);
  s.dims.resize(s.reps.size());
  s.numerators.resize(s.reps.size());
  parallel_for(s.reps.size(), [&](std::size_t i) {
    s.dims[i] = dimension(s.reps[i]);
    s.numerators[i] = eigenvalue_numerator(s.reps[i]);
  });
  return s;
}

// sum over λ ≠ (n) with depth > max_depth of d_λ |a_λ|^t (numerator over n^(2t)).
Integer excluded_mass(const Spectrum& s, int max_depth, long t) {
  Integer total = 0;
  for (std::size_t i = 0; i < s.reps.size(); ++i) {
    if (s.reps[i].depth() > max_depth && s.reps[i].depth() > 0) {
      total += s.dims[i] * pow(Integer(std::labs(s.numerators[i])), static_cast<unsigned long>(t));
    }
  }
  return total;
}

Integer denominator_power(int n, long t) {
  return pow(Integer(n), static_cast<unsigned long>(2 * t));
}

// Main term over λ ≠ (n) with depth <= max_depth.
TvValue spectral_main(const WalkParams& p, int max_depth, Mode mode) {
  const int n = p.n;
  const CharacterColumns columns(n, std::min(max_depth, n));
  const auto& reps = columns.representations();
  const auto classes = enumerate_partitions(n);
  const Integer n_factorial = factorial(static_cast<unsigned>(n));

  std::vector<Integer> weights(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (reps[i].depth() == 0) {
      continue;  // trivial representation
    }
    weights[i] = dimension(reps[i]) *
                 pow(Integer(eigenvalue_numerator(reps[i])), static_cast<unsigned long>(p.t));
  }

  TvValue out;
  if (mode == Mode::exact) {
    std::vector<Integer> per_class(classes.size());
    parallel_for(classes.size(), [&](std::size_t c) {
      const auto chi = columns.column(classes[c]);
      Integer sum = 0;
      for (std::size_t i = 0; i < reps.size(); ++i) {
        if (sgn(chi[i]) != 0 && sgn(weights[i]) != 0) {
          sum += weights[i] * chi[i];
        }
      }
      per_class[c] = class_size(classes[c]) * abs(sum);
    });
    Integer total = 0;
    for (const auto& v : per_class) {
      total += v;
    }
    Rational tv(total, 2 * n_factorial * denominator_power(n, p.t));
    tv.canonicalize();
    out.value = to_double(tv);
    out.exact = std::move(tv);
    return out;
  }

  // float mode: weights scaled by n^(2t) in 113-bit arithmetic
  std::vector<Quad> quad_weights(reps.size());
  const Quad inv_square = Quad(1) / (Quad(n) * Quad(n));
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (reps[i].depth() == 0) {
      continue;
    }
    const Quad s = Quad(eigenvalue_numerator(reps[i])) * inv_square;
    quad_weights[i] = to_quad(dimension(reps[i])) * boost::multiprecision::pow(s, static_cast<long>(p.t));
  }
  const double weight_rounding = gamma_bound(2.0 * static_cast<double>(p.t) + 4.0);
  const double sum_rounding = gamma_bound(static_cast<double>(reps.size()) + 1.0);

  std::vector<Quad> per_class(classes.size());
  std::vector<Quad> per_class_abs(classes.size());
  parallel_for(classes.size(), [&](std::size_t c) {
    const auto chi = columns.column(classes[c]);
    Quad sum = 0;
    Quad magnitude = 0;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (sgn(chi[i]) == 0 || reps[i].depth() == 0) {
        continue;
      }
      const Quad term = quad_weights[i] * to_quad(chi[i]);
      sum += term;
      magnitude += abs(term);
    }
    const Quad weight = to_quad(class_size(classes[c])) / to_quad(n_factorial);
    per_class[c] = weight * abs(sum);
    per_class_abs[c] = weight * magnitude;
  });
  Quad total = 0;
  Quad magnitude = 0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    total += per_class[c];
    magnitude += per_class_abs[c];
  }
  const double class_rounding = gamma_bound(static_cast<double>(classes.size()) + 4.0);
  out.value = static_cast<double>(total / 2);
  out.rounding_error = 0.5 * static_cast<double>(magnitude) *
                           (weight_rounding + sum_rounding + class_rounding) +
                       std::numeric_limits<double>::epsilon() * out.value;
  return out;
}

}  // namespace

TruncatedTv truncated_tv(const WalkParams& params, int truncation, Mode mode) {
  check_size(params, mode);
  if (truncation < 1) {
    throw ArgumentError("truncated_tv: truncation M must be >= 1");
  }
  const int depth = std::min(truncation, params.n - 1);
  TruncatedTv out;
  out.truncation = truncation;
  out.main = spectral_main(params, depth, mode);
  // The true distance lies in [0, 1], so projecting the main term onto
  // [0, 1] can only bring it closer and the certificate still holds.
  if (out.main.value > 1.0) {
    out.main.value = 1.0;
    if (out.main.exact) {
      out.main.exact = Rational(1);
    }
  }

  if (depth >= params.n - 1) {
    out.error_bound_exact = 0;
  } else {
    const Spectrum spectrum = full_spectrum(params.n);
    out.error_bound_exact = Rational(excluded_mass(spectrum, depth, params.t),
                                     2 * denominator_power(params.n, params.t));
    out.error_bound_exact.canonicalize();
  }
  out.error_bound = to_double(out.error_bound_exact) + out.main.rounding_error;
  return out;
}

TvValue exact_tv_fourier(const WalkParams& params, Mode mode) {
  return truncated_tv(params, std::max(1, params.n - 1), mode).main;
}

Rational remainder_bound_exact(const WalkParams& params, int truncation) {
  check_size(params, Mode::floating);
  if (truncation < 1) {
    throw ArgumentError("remainder_bound: truncation M must be >= 1");
  }
  // λ_1 <= n - M  <=>  depth >= M  <=>  depth > M - 1
  const Spectrum spectrum = full_spectrum(params.n);
  Rational out(excluded_mass(spectrum, truncation - 1, params.t),
               denominator_power(params.n, params.t));
  out.canonicalize();
  return out;
}

double remainder_bound(const WalkParams& params, int truncation) {
  return to_double(remainder_bound_exact(params, truncation));
}

int smallest_truncation(const WalkParams& params, double target) {
  check_size(params, Mode::floating);
  const Spectrum spectrum = full_spectrum(params.n);
  // excluded mass by depth, accumulated from the deepest representations up
  std::vector<Integer> by_depth(static_cast<std::size_t>(params.n) + 1);
  for (std::size_t i = 0; i < spectrum.reps.size(); ++i) {
    const int d = spectrum.reps[i].depth();
    if (d > 0) {
      by_depth[d] += spectrum.dims[i] *
                     pow(Integer(std::labs(spectrum.numerators[i])), static_cast<unsigned long>(params.t));
    }
  }
  const Integer denominator = 2 * denominator_power(params.n, params.t);
  Integer excluded = 0;
  int best = params.n - 1;
  for (int m = params.n - 1; m >= 1; --m) {
    // truncation m excludes depths m+1 .. n-1
    if (m + 1 <= params.n - 1) {
      excluded += by_depth[m + 1];
    }
    if (to_double(Rational(excluded, denominator)) <= target) {
      best = m;
    } else {
      break;
    }
  }
  return std::max(best, 1);
}

// ---------------------------------------------------------------- oracle

OracleResult convolution_oracle(int n, long t) {
  if (n < 2) {
    throw ArgumentError("convolution_oracle: need n >= 2");
  }
  if (n > kMaxOracleN || t > kMaxOracleSteps) {
    throw SizeLimitError("convolution_oracle: limited to n <= " + std::to_string(kMaxOracleN) +
                         " and t <= " + std::to_string(kMaxOracleSteps));
  }
  if (t < 0) {
    throw ArgumentError("convolution_oracle: negative step count");
  }

  // every permutation in lexicographic order, keyed by its one-line digits
  std::vector<std::vector<int>> perms;
  std::unordered_map<std::uint32_t, std::size_t> index;
  std::vector<int> current(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    current[i] = i;
  }
  const auto encode = [n](const std::vector<int>& p) {
    std::uint32_t key = 0;
    for (int i = 0; i < n; ++i) {
      key = key * 8 + static_cast<std::uint32_t>(p[i]);
    }
    return key;
  };
  do {
    index.emplace(encode(current), perms.size());
    perms.push_back(current);
  } while (std::next_permutation(current.begin(), current.end()));

  std::vector<std::pair<int, int>> transpositions;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      transpositions.emplace_back(i, j);
    }
  }
  // neighbour[g][k] = index of g ∘ τ_k
  std::vector<std::vector<std::size_t>> neighbour(perms.size());
  for (std::size_t g = 0; g < perms.size(); ++g) {
    neighbour[g].reserve(transpositions.size());
    for (const auto& [i, j] : transpositions) {
      std::vector<int> moved = perms[g];
      std::swap(moved[i], moved[j]);
      neighbour[g].push_back(index.at(encode(moved)));
    }
  }

  // mass(g) = weight(g) / n^(2s) after s steps
  std::vector<Integer> weight(perms.size(), Integer(0));
  weight[0] = 1;  // identity comes first lexicographically
  std::vector<Integer> next(perms.size());
  for (long s = 0; s < t; ++s) {
    for (std::size_t g = 0; g < perms.size(); ++g) {
      Integer acc = 0;
      for (std::size_t nb : neighbour[g]) {
        acc += weight[nb];
      }
      next[g] = n * weight[g] + 2 * acc;
    }
    std::swap(weight, next);
  }

  const Integer scale = denominator_power(n, t);
  const Integer n_factorial = factorial(static_cast<unsigned>(n));
  OracleResult out;
  Integer deviation = 0;
  for (std::size_t g = 0; g < perms.size(); ++g) {
    deviation += abs(n_factorial * weight[g] - scale);
    std::vector<int> lengths;
    for (const auto& [q, count] : cycle_census(PermState(perms[g]))) {
      lengths.insert(lengths.end(), static_cast<std::size_t>(count), q);
    }
    std::sort(lengths.begin(), lengths.end(), std::greater<>());
    out.classes[Partition(std::move(lengths))] += Rational(weight[g], scale);
  }
  for (auto& [mu, mass] : out.classes) {
    mass.canonicalize();
  }
  out.tv = Rational(deviation, 2 * n_factorial * scale);
  out.tv.canonicalize();
  return out;
}

ClassDistribution fourier_class_distribution(const WalkParams& params) {
  check_size(params, Mode::exact);
  const int n = params.n;
  const CharacterColumns columns(n, n);
  const auto& reps = columns.representations();
  const Integer n_factorial = factorial(static_cast<unsigned>(n));
  std::vector<Integer> weights(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    weights[i] = dimension(reps[i]) *
                 pow(Integer(eigenvalue_numerator(reps[i])), static_cast<unsigned long>(params.t));
  }
  const Integer denominator = n_factorial * denominator_power(n, params.t);
  ClassDistribution out;
  for (const auto& mu : enumerate_partitions(n)) {
    const auto chi = columns.column(mu);
    Integer sum = 0;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      sum += weights[i] * chi[i];
    }
    Rational mass(class_size(mu) * sum, denominator);
    mass.canonicalize();
    out.emplace(mu, std::move(mass));
  }
  return out;
}

std::vector<ProfilePoint> profile_curve(int n, const std::vector<double>& c_values,
                                        int truncation, Mode mode) {
  std::vector<ProfilePoint> out;
  out.reserve(c_values.size());
  for (double c : c_values) {
    const WalkParams params = WalkParams::at_window(n, c);
    const TruncatedTv tv = truncated_tv(params, truncation, mode);
    ProfilePoint point;
    point.n = n;
    point.c = c;
    point.t = params.t;
    point.tv_main = tv.main.value;
    point.error_bound = tv.error_bound;
    point.tv_limit = limit_profile(c);
    point.mode = mode;
    out.push_back(point);
  }
  return out;
}

}  // namespace rtshuffle
