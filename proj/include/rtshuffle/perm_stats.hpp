#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "rtshuffle/numeric.hpp"

namespace rtshuffle {

/// A permutation of {0, ..., n-1} in one-line notation.
class PermState {
 public:
  explicit PermState(int n = 0);  ///< identity
  explicit PermState(std::vector<int> mapping);  ///< throws unless a bijection

  int size() const { return static_cast<int>(mapping_.size()); }
  int operator[](int i) const { return mapping_[i]; }
  std::span<const int> mapping() const { return mapping_; }

  /// Right multiplication by the transposition (i j).
  void swap_positions(int i, int j) { std::swap(mapping_[i], mapping_[j]); }

  /// (this ∘ other)(x) = this(other(x)).
  PermState compose(const PermState& other) const;

  int fixed_points() const;

  friend bool operator==(const PermState&, const PermState&) = default;

 private:
  std::vector<int> mapping_;
};

/// q -> N_q(σ), the number of q-cycles; only nonzero counts are stored.
using CycleCensus = std::map<int, int>;

CycleCensus cycle_census(const PermState& sigma);

/// P(N_1 = m) for a uniform permutation of S_n:
/// (1/m!) sum_{i=0}^{n-m} (-1)^i / i!. Throws ArgumentError off [0, n].
Rational fixed_point_law(int n, int m);

inline constexpr int kMaxClassEnumerationN = 12;

/// P(N_q = m) for a uniform permutation of S_n, summed exactly over cycle
/// types. n <= kMaxClassEnumerationN.
Rational qcycle_probability(int n, int q, int m);

/// |S_{n,j}|, permutations all of whose cycles have length <= j:
/// a(0) = 1, a(n) = sum_{q=1}^{min(j,n)} C(n-1, q-1) (q-1)! a(n-q).
Integer count_small_cycle_perms(int n, int j);

/// ln(|S_{n,j}| / n!) + n ln(n) / T(j) with T(j) = j(j+1)/2. A negative
/// value certifies log(|S_{n,j}|/|S_n|) <= -n log(n) / T(j) at this (n, j).
double prop37_margin(int n, int j);

struct SimConfig {
  int n = 2;
  long t = 0;
  long sample_count = 1;
  std::uint64_t seed = 0;
};

/// One trajectory of the lazy walk from the identity: each step does
/// nothing with probability 1/n, otherwise applies a uniform transposition.
/// Trajectory `index` draws from its own stream derived from (seed, index).
PermState simulate_walk(const SimConfig& cfg, long index = 0);

/// Histogram of N_1 over cfg.sample_count independent trajectories,
/// compared against a Poisson reference law.
struct FixedPointHistogram {
  std::vector<long> counts;             ///< counts[m] = trajectories with m fixed points
  std::vector<double> empirical;        ///< counts / sample_count
  std::vector<double> reference;        ///< Poisson pmf on the same support
  double reference_tail = 0.0;          ///< Poisson mass beyond the support
  double tv = 0.0;
  double mean = 0.0;
};

FixedPointHistogram empirical_fixed_point_hist(const SimConfig& cfg, double reference_rate);

/// Poisson(rate) pmf at m, evaluated in log space.
double poisson_pmf(double rate, int m);

}  // namespace rtshuffle
