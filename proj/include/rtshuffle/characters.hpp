#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "rtshuffle/numeric.hpp"
#include "rtshuffle/partition.hpp"

namespace rtshuffle {

/// Memo table for the Murnaghan–Nakayama recursion, keyed on (remaining
/// shape, remaining cycle multiset). Safe for concurrent readers and
/// writers. With a nonzero entry cap the whole table is dropped when the
/// cap is reached and a new generation starts.
class CharacterCache {
 public:
  struct Stats {
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::size_t entries = 0;
    std::uint64_t generations = 1;
  };

  explicit CharacterCache(std::size_t max_entries = 0);
  CharacterCache(const CharacterCache&) = delete;
  CharacterCache& operator=(const CharacterCache&) = delete;

  bool lookup(const std::string& key, Integer& value) const;
  void store(const std::string& key, const Integer& value);
  void clear();
  Stats stats() const;

  /// Calls visit(key, value) for every stored entry (under shard locks).
  void for_each(const std::function<void(const std::string&, const Integer&)>& visit) const;

  /// Test hook: adds one to a stored value. Returns false if the cache is
  /// empty. Used to check that the verification suite notices corruption.
  bool corrupt_one_entry();

 private:
  static constexpr std::size_t kShards = 16;
  struct Shard {
    mutable std::shared_mutex mutex;
    std::unordered_map<std::string, Integer> map;
  };

  Shard& shard_for(const std::string& key);
  const Shard& shard_for(const std::string& key) const;

  std::size_t max_entries_;
  Shard shards_[kShards];
  mutable std::atomic<std::uint64_t> hits_{0};
  mutable std::atomic<std::uint64_t> misses_{0};
  std::atomic<std::size_t> entries_{0};
  std::atomic<std::uint64_t> generations_{1};
  std::mutex clear_mutex_;
};

/// Process-wide cache used when no cache is passed explicitly.
CharacterCache& default_character_cache();

/// Memo key for (shape, remaining cycle multiset). Exposed so the cache
/// integrity check can decode entries.
std::string character_key(const std::vector<int>& shape, const std::vector<int>& cycles);
void decode_character_key(const std::string& key, std::vector<int>& shape,
                          std::vector<int>& cycles);

/// The irreducible character of S_m indexed by λ, evaluated at the class of
/// cycle type μ. Murnaghan–Nakayama: border strips of length μ_1 are removed
/// (largest cycle first), each weighted by (-1)^(rows spanned - 1).
/// Throws ArgumentError if |λ| != |μ|.
Integer mn_character(const Partition& lambda, const Partition& mu, CharacterCache& cache);
Integer mn_character(const Partition& lambda, const Partition& mu);

/// Same recursion without any memo table; used to audit cached entries.
Integer mn_character_uncached(const Partition& lambda, const Partition& mu);

/// Size of the conjugacy class of cycle type μ: m! / prod_q (q^k_q k_q!).
Integer class_size(const Partition& mu);

/// Content sum sum_i [C(λ_i, 2) - C(λ'_i, 2)], the numerator of r(λ) over
/// C(n, 2).
long content_sum(const Partition& lambda);

/// r(λ) = ch^λ(τ) / d_λ for a transposition τ. Requires n >= 2.
Rational character_ratio(const Partition& lambda);

/// Fourier eigenvalue of the lazy random-transposition step at λ.
struct Eigenvalue {
  Rational value;  ///< s_λ = 1/n + (n-1)/n r(λ)
  Rational ratio;  ///< r(λ)
};

Eigenvalue eigenvalue(const Partition& lambda);

/// Integer a with s_λ = a / n^2 (a = n + 2 content_sum(λ)).
long eigenvalue_numerator(const Partition& lambda);

/// Character values χ^λ(μ) for every λ ⊢ n with n - λ_1 <= max_depth,
/// one class μ at a time.
///
/// Strips are added in increasing cycle length starting from the shapes of
/// the fixed points (whose values are their tableau counts). A chain of
/// shapes ending at λ never has more boxes outside the first row than λ,
/// so every intermediate shape deeper than max_depth is discarded.
/// Construction precomputes all strip additions; column() is then
/// read-only and may be called concurrently.
class CharacterColumns {
 public:
  CharacterColumns(int n, int max_depth);

  int n() const { return n_; }
  int max_depth() const { return max_depth_; }

  /// λ ⊢ n with depth <= max_depth, reverse lexicographic ((n) first).
  const std::vector<Partition>& representations() const { return representations_; }

  /// χ^λ(μ) in the order of representations(). Requires |μ| = n.
  std::vector<Integer> column(const Partition& mu) const;

 private:
  struct Step {
    std::int32_t target;
    std::int32_t sign;
  };

  template <typename Value>
  bool run(const Partition& mu, std::vector<Value>& out) const;

  int shape_index(const std::vector<int>& parts) const;

  int n_;
  int max_depth_;
  std::vector<Partition> shapes_;         // grouped by size, reverse lex within a size
  std::vector<int> size_offset_;          // first index of each size; size n+1 sentinel
  std::vector<Integer> shape_dimension_;
  std::vector<std::int64_t> shape_dimension_small_;  // -1 if it does not fit
  std::vector<std::uint32_t> step_offset_;  // CSR over (shape, r)
  std::vector<Step> steps_;
  std::unordered_map<Partition, int> index_of_;
  std::vector<Partition> representations_;
};

}  // namespace rtshuffle
