#include "rtshuffle/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rtshuffle/characters.hpp"
#include "rtshuffle/limit.hpp"
#include "rtshuffle/numeric.hpp"
#include "rtshuffle/partition.hpp"
#include "rtshuffle/perm_stats.hpp"
#include "rtshuffle/walk.hpp"

namespace rtshuffle {

namespace {

constexpr int kMaxOrthogonalityM = 12;

double gap(const Rational& a, const Rational& b) {
  return std::abs(to_double(Rational(a - b)));
}

CheckRecord make(const std::string& family, const std::string& name,
                 std::vector<std::pair<std::string, std::string>> inputs) {
  CheckRecord out;
  out.family = family;
  out.name = name;
  out.inputs = std::move(inputs);
  return out;
}

void note(CheckRecord& record, bool ok, double residual, const std::string& what) {
  ++record.cases;
  record.residual = std::max(record.residual, residual);
  if (!ok && record.passed) {
    record.passed = false;
    record.detail = what;
  }
}

std::vector<int> size_range(const std::optional<int>& fixed, int lo, int hi, int limit,
                            const std::string& family) {
  if (!fixed) {
    std::vector<int> all;
    for (int v = lo; v <= hi; ++v) {
      all.push_back(v);
    }
    return all;
  }
  if (*fixed > limit) {
    throw SizeLimitError(family + ": n = " + std::to_string(*fixed) + " exceeds " +
                         std::to_string(limit));
  }
  if (*fixed < lo) {
    throw ArgumentError(family + ": n must be at least " + std::to_string(lo));
  }
  return {*fixed};
}

void orthogonality(const VerifyOptions& options, CharacterCache& cache,
                   std::vector<CheckRecord>& out) {
  for (int m : size_range(options.n, 1, 8, kMaxOrthogonalityM, "orthogonality")) {
    CheckRecord record = make("orthogonality", "character table of S_" + std::to_string(m),
                              {{"m", std::to_string(m)}});
    const auto shapes = enumerate_partitions(m);
    const Integer order = factorial(static_cast<unsigned>(m));
    std::vector<std::vector<Integer>> table(shapes.size());
    std::vector<Integer> sizes;
    for (const auto& mu : shapes) {
      sizes.push_back(class_size(mu));
    }
    for (std::size_t a = 0; a < shapes.size(); ++a) {
      for (const auto& mu : shapes) {
        table[a].push_back(mn_character(shapes[a], mu, cache));
      }
    }
    for (std::size_t a = 0; a < shapes.size(); ++a) {
      for (std::size_t b = a; b < shapes.size(); ++b) {
        Integer rows = 0;
        Integer columns = 0;
        for (std::size_t k = 0; k < shapes.size(); ++k) {
          rows += sizes[k] * table[a][k] * table[b][k];
          columns += table[k][a] * table[k][b];
        }
        const Integer want_rows = a == b ? order : Integer(0);
        const Integer want_columns = a == b ? Integer(order / sizes[a]) : Integer(0);
        note(record, rows == want_rows, std::abs(to_double(Rational(rows - want_rows))),
             "rows " + shapes[a].to_string() + " / " + shapes[b].to_string());
        note(record, columns == want_columns,
             std::abs(to_double(Rational(columns - want_columns))),
             "classes " + shapes[a].to_string() + " / " + shapes[b].to_string());
      }
    }
    out.push_back(std::move(record));
  }
  if (!options.n) {
    CheckRecord record = make("orthogonality", "sum of squared dimensions", {{"m_max", "30"}});
    for (int m = 0; m <= 30; ++m) {
      Integer total = 0;
      for (const auto& lambda : enumerate_partitions(m)) {
        const Integer d = dimension(lambda);
        total += d * d;
      }
      const Integer want = factorial(static_cast<unsigned>(m));
      note(record, total == want, std::abs(to_double(Rational(total - want))),
           "m = " + std::to_string(m));
    }
    out.push_back(std::move(record));
  }
}

void oracle(const VerifyOptions& options, std::vector<CheckRecord>& out) {
  for (int n : size_range(options.n, 3, 7, kMaxOracleN, "oracle")) {
    CheckRecord record = make("oracle", "Fourier vs convolution, n = " + std::to_string(n),
                              {{"n", std::to_string(n)}, {"t", "0..10"}});
    for (long t = 0; t <= 10; ++t) {
      const WalkParams params = WalkParams::at_steps(n, t);
      const OracleResult direct = convolution_oracle(n, t);
      const Rational fourier = *exact_tv_fourier(params, Mode::exact).exact;
      note(record, fourier == direct.tv, gap(fourier, direct.tv), "TV at t = " + std::to_string(t));
      const ClassDistribution classes = fourier_class_distribution(params);
      for (const auto& [mu, mass] : direct.classes) {
        const auto it = classes.find(mu);
        const Rational other = it == classes.end() ? Rational(0) : it->second;
        note(record, other == mass, gap(other, mass),
             "class " + mu.to_string() + " at t = " + std::to_string(t));
      }
    }
    out.push_back(std::move(record));
  }
}

void lemma43(const VerifyOptions& options, std::vector<CheckRecord>& out) {
  if (options.j && *options.j < 1) {
    throw ArgumentError("lemma43: j must be positive");
  }
  if (options.n && options.j && *options.n < 2 * *options.j) {
    throw ArgumentError("lemma43: the identity needs n >= 2j");
  }
  for (int n : size_range(options.n, 2, 10, kMaxEnumeratedSize, "lemma43")) {
    for (int j = 1; 2 * j <= n; ++j) {
      if (options.j ? j != *options.j : j > 4) {
        continue;
      }
      CheckRecord record =
          make("lemma43", "character sum vs T_j(fixed points)",
               {{"n", std::to_string(n)}, {"j", std::to_string(j)}});
      for (const auto& mu : enumerate_partitions(n)) {
        const Lemma43Result r = lemma43_check(n, j, mu);
        if (r.applicable) {
          note(record, r.equal, gap(r.lhs, r.rhs), "class " + mu.to_string());
        }
      }
      out.push_back(std::move(record));
    }
  }
}

void transfer(const VerifyOptions& options, std::vector<CheckRecord>& out) {
  if (options.j && (*options.j < 1 || *options.j > 40)) {
    throw ArgumentError("transfer: j must lie in [1, 40]");
  }
  for (int j = options.j.value_or(1); j <= options.j.value_or(12); ++j) {
    CheckRecord record =
        make("transfer", "Young-graph mass transfer",
             {{"j", std::to_string(j)}, {"trials", std::to_string(options.transfer_trials)},
              {"seed", std::to_string(options.seed)}});
    std::mt19937_64 rng(options.seed ^ static_cast<std::uint64_t>(j));
    std::uniform_int_distribution<int> draw(-1000, 1000);
    const auto shapes = enumerate_partitions(j);
    const auto mass = [](const WeightRow& row) {
      Rational total = 0;
      for (const auto& [p, w] : row) {
        total += w * Rational(dimension(p));
      }
      return total;
    };
    for (int trial = 0; trial < options.transfer_trials; ++trial) {
      WeightRow row;
      for (const auto& p : shapes) {
        row[p] = draw(rng);
      }
      const Rational lhs = mass(extend_weights(row, j));
      const Rational rhs = (j + 1) * mass(row);
      note(record, lhs == rhs, gap(lhs, rhs), "trial " + std::to_string(trial));
    }
    out.push_back(std::move(record));
  }
}

void qcycle(const VerifyOptions& options, std::vector<CheckRecord>& out) {
  for (int n : size_range(options.n, 1, kMaxClassEnumerationN, kMaxClassEnumerationN, "qcycle")) {
    CheckRecord record = make("qcycle", "P(N_q = m) <= 1/(q^m m!)", {{"n", std::to_string(n)}});
    for (int q = 1; q <= n; ++q) {
      Rational total = 0;
      for (int m = 0; m <= n; ++m) {
        const Rational p = qcycle_probability(n, q, m);
        total += p;
        const Rational bound = fraction(1, pow(Integer(q), static_cast<unsigned>(m)) *
                                               factorial(static_cast<unsigned>(m)));
        note(record, p <= bound, to_double(Rational(p - bound)),
             "q = " + std::to_string(q) + ", m = " + std::to_string(m));
        if (q == 1) {
          const Rational law = fixed_point_law(n, m);
          note(record, law == p, 0.0, "fixed-point law at m = " + std::to_string(m));
        }
      }
      note(record, total == 1, gap(total, 1), "law of N_" + std::to_string(q) + " sums to 1");
    }
    // the record holds the largest p - bound, which is <= 0 when all pass
    out.push_back(std::move(record));
  }
}

void series(std::vector<CheckRecord>& out) {
  for (double c : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    CheckRecord record = make("series", "sum_j e^{-2jc} T_j(N) vs f_c(N)",
                              {{"c", format_real(c)}, {"N", "0..20"}, {"J", "80"}});
    for (int n = 0; n <= 20; ++n) {
      const SeriesCheck check = series_vs_closed_form(c, n, 80);
      note(record, check.residual < 1e-10 && check.converged, check.residual,
           "N = " + std::to_string(n));
    }
    out.push_back(std::move(record));
  }
}

void certificate(const VerifyOptions& options, std::vector<CheckRecord>& out) {
  for (int n : size_range(options.n, 3, 8, kMaxExactN, "certificate")) {
    CheckRecord record = make("certificate", "|main - TV| <= error_bound",
                              {{"n", std::to_string(n)}, {"t", "0,1,2,4,8,16,32"}, {"M", "1..n-1"}});
    for (long t : {0L, 1L, 2L, 4L, 8L, 16L, 32L}) {
      const WalkParams params = WalkParams::at_steps(n, t);
      const Rational exact_tv = *exact_tv_fourier(params, Mode::exact).exact;
      for (int m = 1; m < n; ++m) {
        const TruncatedTv cut = truncated_tv(params, m, Mode::exact);
        const Rational miss = abs(Rational(*cut.main.exact - exact_tv));
        note(record, miss <= cut.error_bound_exact, to_double(Rational(miss - cut.error_bound_exact)),
             "t = " + std::to_string(t) + ", M = " + std::to_string(m));
      }
    }
    out.push_back(std::move(record));
  }
}

void audit(const CharacterCache& cache, const std::string& label, std::vector<CheckRecord>& out) {
  CheckRecord record = make("cache_integrity", "memo entries vs uncached recursion",
                            {{"cache", label}});
  cache.for_each([&](const std::string& key, const Integer& value) {
    std::vector<int> shape;
    std::vector<int> cycles;
    decode_character_key(key, shape, cycles);
    const Partition lambda(shape);
    const Partition mu(cycles);
    const Integer fresh = mn_character_uncached(lambda, mu);
    note(record, fresh == value, std::abs(to_double(Rational(fresh - value))),
         "entry " + lambda.to_string() + " at " + mu.to_string());
  });
  out.push_back(std::move(record));
}

bool selected(const VerifyOptions& options, const std::string& family) {
  return options.only.empty() ||
         std::find(options.only.begin(), options.only.end(), family) != options.only.end();
}

}  // namespace

const std::vector<std::string>& verify_families() {
  static const std::vector<std::string> names{"orthogonality", "oracle", "lemma43", "transfer",
                                              "qcycle",        "series", "certificate",
                                              "cache_integrity"};
  return names;
}

std::vector<CheckRecord> run_verification(const VerifyOptions& options) {
  for (const auto& name : options.only) {
    const auto& all = verify_families();
    if (std::find(all.begin(), all.end(), name) == all.end()) {
      throw ArgumentError("unknown verification family '" + name + "'");
    }
  }
  CharacterCache cache;
  if (options.inject_cache_fault) {
    for (const auto& lambda : enumerate_partitions(8)) {
      for (const auto& mu : enumerate_partitions(8)) {
        mn_character(lambda, mu, cache);
      }
    }
    cache.corrupt_one_entry();
  }

  std::vector<CheckRecord> out;
  if (selected(options, "orthogonality")) {
    orthogonality(options, cache, out);
  }
  if (selected(options, "oracle")) {
    oracle(options, out);
  }
  if (selected(options, "lemma43")) {
    lemma43(options, out);
  }
  if (selected(options, "transfer")) {
    transfer(options, out);
  }
  if (selected(options, "qcycle")) {
    qcycle(options, out);
  }
  if (selected(options, "series")) {
    series(out);
  }
  if (selected(options, "certificate")) {
    certificate(options, out);
  }
  if (selected(options, "cache_integrity") || options.inject_cache_fault) {
    audit(cache, "verification", out);
    audit(default_character_cache(), "process default", out);
  }
  return out;
}

}  // namespace rtshuffle
