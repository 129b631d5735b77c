#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rtshuffle/characters.hpp"
#include "rtshuffle/perm_stats.hpp"
#include "rtshuffle/walk.hpp"

using namespace rtshuffle;

namespace {

// every permutation of {0..n-1}, by std::next_permutation
template <typename Visit>
void for_each_permutation(int n, Visit visit) {
  std::vector<int> mapping(static_cast<std::size_t>(n));
  std::iota(mapping.begin(), mapping.end(), 0);
  do {
    visit(PermState(mapping));
  } while (std::next_permutation(mapping.begin(), mapping.end()));
}

}  // namespace

TEST_CASE("PermState basics") {
  const PermState id(4);
  CHECK(id.fixed_points() == 4);
  CHECK_THROWS_AS(PermState(std::vector<int>{0, 0, 1}), ArgumentError);
  CHECK_THROWS_AS(PermState(std::vector<int>{0, 3, 1}), ArgumentError);

  PermState s(4);
  s.swap_positions(0, 2);
  CHECK(s.fixed_points() == 2);
  CHECK(s.compose(s) == id);

  const PermState a(std::vector<int>{1, 2, 0});
  const PermState b(std::vector<int>{0, 2, 1});
  const PermState ab = a.compose(b);
  for (int x = 0; x < 3; ++x) {
    CHECK(ab[x] == a[b[x]]);
  }
}

TEST_CASE("cycle_census") {
  CHECK(cycle_census(PermState(6)) == CycleCensus{{1, 6}});
  CHECK(cycle_census(PermState(std::vector<int>{1, 2, 3, 4, 0})) == CycleCensus{{5, 1}});
  CHECK(cycle_census(PermState(std::vector<int>{1, 0, 3, 2})) == CycleCensus{{2, 2}});
  for_each_permutation(6, [](const PermState& s) {
    int total = 0;
    for (const auto& [q, count] : cycle_census(s)) {
      total += q * count;
    }
    REQUIRE(total == 6);
  });
}

TEST_CASE("fixed_point_law") {
  CHECK(fixed_point_law(4, 0) == Rational(3, 8));
  for (int n = 1; n <= 10; ++n) {
    CHECK(fixed_point_law(n, n) == Rational(1, factorial(static_cast<unsigned>(n))));
    CHECK(fixed_point_law(n, n - 1) == 0);
  }
  CHECK_THROWS_AS(fixed_point_law(4, 5), ArgumentError);
  CHECK_THROWS_AS(fixed_point_law(4, -1), ArgumentError);

  for (int n = 0; n <= 50; ++n) {
    Rational total = 0;
    for (int m = 0; m <= n; ++m) {
      const Rational p = fixed_point_law(n, m);
      REQUIRE(p <= Rational(1, factorial(static_cast<unsigned>(m))));
      total += p;
    }
    REQUIRE(total == 1);
  }
}

TEST_CASE("fixed_point_law and qcycle_probability match enumeration for n <= 8") {
  for (int n = 1; n <= 8; ++n) {
    std::map<std::pair<int, int>, long> counts;  // (q, N_q) -> permutations
    long total = 0;
    for_each_permutation(n, [&](const PermState& s) {
      const CycleCensus census = cycle_census(s);
      for (int q = 1; q <= n; ++q) {
        const auto it = census.find(q);
        ++counts[{q, it == census.end() ? 0 : it->second}];
      }
      ++total;
    });
    for (int q = 1; q <= n; ++q) {
      for (int m = 0; m <= n; ++m) {
        const auto it = counts.find({q, m});
        Rational expected(it == counts.end() ? 0 : it->second, total);
        expected.canonicalize();
        REQUIRE(qcycle_probability(n, q, m) == expected);
        if (q == 1) {
          REQUIRE(fixed_point_law(n, m) == expected);
        }
      }
    }
  }
}

TEST_CASE("qcycle_probability") {
  CHECK(qcycle_probability(4, 2, 2) == Rational(1, 8));
  CHECK(qcycle_probability(4, 2, 1) == Rational(1, 4));
  CHECK(qcycle_probability(4, 5, 1) == 0);
  CHECK(qcycle_probability(4, 5, 0) == 1);
  CHECK_THROWS_AS(qcycle_probability(13, 2, 1), SizeLimitError);
  for (int n = 1; n <= 12; ++n) {
    for (int q = 1; q <= n; ++q) {
      for (int m = 0; m <= n; ++m) {
        const Rational bound(1, pow(Integer(q), static_cast<unsigned>(m)) *
                                    factorial(static_cast<unsigned>(m)));
        REQUIRE(qcycle_probability(n, q, m) <= bound);
        if (q == 1) {
          REQUIRE(qcycle_probability(n, 1, m) == fixed_point_law(n, m));
        }
      }
    }
  }
}

TEST_CASE("count_small_cycle_perms") {
  for (int n = 0; n <= 30; ++n) {
    CHECK(count_small_cycle_perms(n, 1) == 1);
    CHECK(count_small_cycle_perms(n, std::max(n, 1)) == factorial(static_cast<unsigned>(n)));
  }
  CHECK(count_small_cycle_perms(4, 2) == 10);
  for (int n = 1; n <= 9; ++n) {
    std::vector<long> by_longest(static_cast<std::size_t>(n + 1), 0);
    for_each_permutation(n, [&](const PermState& s) { ++by_longest[cycle_census(s).rbegin()->first]; });
    long running = 0;
    for (int j = 1; j <= n; ++j) {
      running += by_longest[j];
      REQUIRE(count_small_cycle_perms(n, j) == running);
    }
  }
}

TEST_CASE("prop37_margin") {
  CHECK(prop37_margin(200, 2) < 0);
  CHECK(prop37_margin(200, 3) < 0);
  CHECK(prop37_margin(200, 2) == doctest::Approx(-66.6).epsilon(0.01));
  // small n may have either sign; the value is still finite
  CHECK(std::isfinite(prop37_margin(5, 2)));
  CHECK_THROWS_AS(prop37_margin(10, 1), ArgumentError);
}

TEST_CASE("simulate_walk") {
  CHECK(simulate_walk({10, 0, 1, 7}) == PermState(10));
  const SimConfig cfg{12, 30, 1, 99};
  CHECK(simulate_walk(cfg, 3) == simulate_walk(cfg, 3));
  CHECK_FALSE(simulate_walk(cfg, 3) == simulate_walk(cfg, 4));
  CHECK_THROWS_AS(simulate_walk({1, 3, 1, 0}), ArgumentError);

  // n = 2, t = 1: identity with probability 1/2
  long identity = 0;
  const long runs = 20000;
  for (long i = 0; i < runs; ++i) {
    identity += simulate_walk({2, 1, runs, 5}, i) == PermState(2);
  }
  CHECK(std::abs(static_cast<double>(identity) / runs - 0.5) < 0.02);
}

TEST_CASE("walk law matches the exact class distribution") {
  // n = 5, t = 3, chi-square-free check: every class mass within 4 sigma
  const int n = 5;
  const long t = 3;
  const long runs = 40000;
  std::map<Partition, long> hits;
  for (long i = 0; i < runs; ++i) {
    const CycleCensus census = cycle_census(simulate_walk({n, t, runs, 11}, i));
    std::vector<int> parts;
    for (auto it = census.rbegin(); it != census.rend(); ++it) {
      parts.insert(parts.end(), static_cast<std::size_t>(it->second), it->first);
    }
    ++hits[Partition(parts)];
  }
  for (const auto& [mu, mass] : convolution_oracle(n, t).classes) {
    const double p = to_double(mass);
    const double sigma = std::sqrt(p * (1 - p) / runs);
    CHECK(std::abs(static_cast<double>(hits[mu]) / runs - p) <= 4 * sigma + 1e-12);
  }
}

TEST_CASE("empirical_fixed_point_hist") {
  const FixedPointHistogram one = empirical_fixed_point_hist({20, 50, 1, 3}, 1.0);
  CHECK(std::accumulate(one.counts.begin(), one.counts.end(), 0L) == 1);
  CHECK(one.tv >= 0.0);
  CHECK(one.tv <= 1.0);

  const SimConfig cfg{30, 200, 5000, 17};
  const FixedPointHistogram a = empirical_fixed_point_hist(cfg, 1.0);
  const FixedPointHistogram b = empirical_fixed_point_hist(cfg, 1.0);
  CHECK(a.counts == b.counts);
  CHECK(a.tv == b.tv);
  CHECK(a.empirical.size() == a.reference.size());
  CHECK(a.reference_tail >= 0.0);
  double half_l1 = a.reference_tail;
  for (std::size_t m = 0; m < a.empirical.size(); ++m) {
    half_l1 += std::abs(a.empirical[m] - a.reference[m]);
  }
  CHECK(a.tv == doctest::Approx(half_l1 / 2).epsilon(1e-12));
}

TEST_CASE("near-uniform mean fixed points at n = 100") {
  const long t = mixing_time_steps(100, 5);
  const FixedPointHistogram h = empirical_fixed_point_hist({100, t, 100000, 2024}, 1.0);
  CHECK(h.mean >= 0.97);
  CHECK(h.mean <= 1.03);
  CHECK(h.tv <= 0.02);
}

TEST_CASE("poisson_pmf") {
  CHECK(poisson_pmf(1, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(poisson_pmf(2, 3) == doctest::Approx(8 * std::exp(-2.0) / 6).epsilon(1e-14));
  double total = 0;
  for (int m = 0; m < 60; ++m) {
    total += poisson_pmf(3.5, m);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}
