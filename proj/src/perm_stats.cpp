#include "rtshuffle/perm_stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rtshuffle/characters.hpp"
#include "rtshuffle/parallel.hpp"
#include "rtshuffle/partition.hpp"

namespace rtshuffle {

PermState::PermState(int n) : mapping_(static_cast<std::size_t>(std::max(n, 0))) {
  for (int i = 0; i < n; ++i) {
    mapping_[i] = i;
  }
}

PermState::PermState(std::vector<int> mapping) : mapping_(std::move(mapping)) {
  std::vector<bool> seen(mapping_.size(), false);
  for (int v : mapping_) {
    if (v < 0 || v >= size() || seen[v]) {
      throw ArgumentError("PermState: mapping is not a bijection");
    }
    seen[v] = true;
  }
}

PermState PermState::compose(const PermState& other) const {
  if (other.size() != size()) {
    throw ArgumentError("PermState::compose: size mismatch");
  }
  std::vector<int> out(mapping_.size());
  for (int i = 0; i < size(); ++i) {
    out[i] = mapping_[other.mapping_[i]];
  }
  return PermState(std::move(out));
}

int PermState::fixed_points() const {
  int count = 0;
  for (int i = 0; i < size(); ++i) {
    count += mapping_[i] == i ? 1 : 0;
  }
  return count;
}

CycleCensus cycle_census(const PermState& sigma) {
  CycleCensus census;
  std::vector<bool> seen(static_cast<std::size_t>(sigma.size()), false);
  for (int start = 0; start < sigma.size(); ++start) {
    if (seen[start]) {
      continue;
    }
    int length = 0;
    for (int x = start; !seen[x]; x = sigma[x]) {
      seen[x] = true;
      ++length;
    }
    ++census[length];
  }
  return census;
}

Rational fixed_point_law(int n, int m) {
  if (n < 0 || m < 0 || m > n) {
    throw ArgumentError("fixed_point_law: need 0 <= m <= n");
  }
  Rational inner = 0;
  Integer i_factorial = 1;
  for (int i = 0; i <= n - m; ++i) {
    if (i > 0) {
      i_factorial *= i;
    }
    const Rational term(1, i_factorial);
    if (i % 2 == 0) {
      inner += term;
    } else {
      inner -= term;
    }
  }
  Rational out = inner / Rational(factorial(static_cast<unsigned>(m)));
  out.canonicalize();
  return out;
}

Rational qcycle_probability(int n, int q, int m) {
  if (n < 0 || q < 1 || m < 0) {
    throw ArgumentError("qcycle_probability: need n >= 0, q >= 1, m >= 0");
  }
  if (n > kMaxClassEnumerationN) {
    throw SizeLimitError("qcycle_probability: n = " + std::to_string(n) + " exceeds " +
                         std::to_string(kMaxClassEnumerationN));
  }
  Integer total = 0;
  for (const auto& mu : enumerate_partitions(n)) {
    if (mu.multiplicity(q) == m) {
      total += class_size(mu);
    }
  }
  Rational out(total, factorial(static_cast<unsigned>(n)));
  out.canonicalize();
  return out;
}

Integer count_small_cycle_perms(int n, int j) {
  if (n < 0 || j < 1) {
    throw ArgumentError("count_small_cycle_perms: need n >= 0 and j >= 1");
  }
  std::vector<Integer> a(static_cast<std::size_t>(n) + 1);
  a[0] = 1;
  for (int size = 1; size <= n; ++size) {
    Integer total = 0;
    for (int q = 1; q <= std::min(j, size); ++q) {
      // choose the q-1 companions of element `size` in its cycle, then order them
      total += binomial(size - 1, static_cast<unsigned>(q - 1)) *
               factorial(static_cast<unsigned>(q - 1)) * a[size - q];
    }
    a[size] = total;
  }
  return a[n];
}

double prop37_margin(int n, int j) {
  if (n < 1 || j < 2) {
    throw ArgumentError("prop37_margin: need n >= 1 and j >= 2");
  }
  const double triangular = j * (j + 1) / 2.0;
  return log(count_small_cycle_perms(n, j)) - log(factorial(static_cast<unsigned>(n))) +
         n * std::log(static_cast<double>(n)) / triangular;
}

PermState simulate_walk(const SimConfig& cfg, long index) {
  if (cfg.n < 2) {
    throw ArgumentError("simulate_walk: need n >= 2");
  }
  if (cfg.t < 0) {
    throw ArgumentError("simulate_walk: negative step count");
  }
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  const auto stream = static_cast<std::uint64_t>(index);
  std::seed_seq seq{lo(cfg.seed), hi(cfg.seed), lo(stream), hi(stream)};
  std::mt19937_64 rng(seq);

  std::uniform_int_distribution<int> any(0, cfg.n - 1);
  std::uniform_int_distribution<int> other(0, cfg.n - 2);
  PermState state(cfg.n);
  for (long step = 0; step < cfg.t; ++step) {
    if (any(rng) == 0) {
      continue;  // lazy step, probability 1/n
    }
    const int i = any(rng);
    int j = other(rng);
    if (j >= i) {
      ++j;
    }
    state.swap_positions(i, j);
  }
  return state;
}

double poisson_pmf(double rate, int m) {
  if (m < 0) {
    return 0.0;
  }
  if (rate == 0.0) {
    return m == 0 ? 1.0 : 0.0;
  }
  return std::exp(m * std::log(rate) - rate - std::lgamma(m + 1.0));
}

FixedPointHistogram empirical_fixed_point_hist(const SimConfig& cfg, double reference_rate) {
  if (cfg.sample_count < 1) {
    throw ArgumentError("empirical_fixed_point_hist: sample_count must be >= 1");
  }
  if (!(reference_rate > 0.0)) {
    throw ArgumentError("empirical_fixed_point_hist: reference rate must be positive");
  }
  std::vector<int> fixed(static_cast<std::size_t>(cfg.sample_count));
  parallel_for(fixed.size(), [&](std::size_t i) {
    fixed[i] = simulate_walk(cfg, static_cast<long>(i)).fixed_points();
  });

  FixedPointHistogram out;
  const int max_seen = *std::max_element(fixed.begin(), fixed.end());
  out.counts.assign(static_cast<std::size_t>(max_seen) + 1, 0);
  long total_fixed = 0;
  for (int f : fixed) {
    ++out.counts[f];
    total_fixed += f;
  }
  const auto samples = static_cast<double>(cfg.sample_count);
  out.mean = static_cast<double>(total_fixed) / samples;

  double l1 = 0.0;
  for (int m = 0; m <= max_seen; ++m) {
    out.empirical.push_back(static_cast<double>(out.counts[m]) / samples);
    out.reference.push_back(poisson_pmf(reference_rate, m));
    l1 += std::abs(out.empirical.back() - out.reference.back());
  }
  for (int m = max_seen + 1;; ++m) {
    const double p = poisson_pmf(reference_rate, m);
    out.reference_tail += p;
    if (m > reference_rate && p < 1e-18) {
      break;
    }
  }
  out.tv = 0.5 * (l1 + out.reference_tail);
  return out;
}

}  // namespace rtshuffle
