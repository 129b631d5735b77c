#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rtshuffle/numeric.hpp"

namespace rtshuffle {

/// An integer partition: weakly decreasing positive parts. The same type
/// indexes irreducible representations of S_n and conjugacy classes (cycle
/// types). The empty partition is the unique partition of 0.
class Partition {
 public:
  Partition() = default;

  /// Throws ArgumentError unless `parts` is weakly decreasing and positive.
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts);

  /// Parses the comma-joined form used in files ("7,3,2,1,1"; "" is empty).
  static Partition parse(std::string_view text);

  /// (m, tail...) for a tail whose first part does not exceed m.
  static Partition with_first_row(int first_row, const Partition& tail);

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return size_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int operator[](std::size_t i) const { return parts_[i]; }

  /// λ_1, or 0 for the empty partition.
  int first_row() const { return parts_.empty() ? 0 : parts_.front(); }

  /// Boxes outside the first row, n - λ_1.
  int depth() const { return size_ - first_row(); }

  /// The partition with its first row removed, (λ_2, λ_3, ...).
  Partition tail() const;

  /// Number of parts equal to q.
  int multiplicity(int q) const;

  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

/// Largest m accepted by enumerate_partitions.
inline constexpr int kMaxEnumeratedSize = 60;

/// All partitions of m in reverse lexicographic order: (m), (m-1,1), ...,
/// (1^m). Throws SizeLimitError above kMaxEnumeratedSize.
std::vector<Partition> enumerate_partitions(int m);

/// Partitions of n with n - λ_1 <= max_depth, in the same reverse
/// lexicographic order. Cheap even when n itself is large.
std::vector<Partition> enumerate_partitions_by_depth(int n, int max_depth);

/// p(m) by Euler's recurrence.
Integer partition_count(int m);

Partition conjugate(const Partition& lambda);

/// Hook length of every box, row by row from the longest row.
std::vector<std::vector<int>> hook_lengths(const Partition& lambda);

Integer hook_product(const Partition& lambda);

/// d_λ = |λ|! / hook_product(λ).
Integer dimension(const Partition& lambda);

/// Partitions obtained from λ by adding one box, in reverse lexicographic
/// order (box in the first row first).
std::vector<Partition> covers(const Partition& lambda);

using WeightRow = std::map<Partition, Rational>;

/// Pushes weights one level up the Young graph: the weight of Λ ⊢ j+1 is
/// the sum of the weights of the partitions it covers. Every partition of
/// j+1 appears in the result (zero where nothing flows in). Keys of
/// `weights` must all be partitions of j; missing ones count as zero.
WeightRow extend_weights(const WeightRow& weights, int j);

}  // namespace rtshuffle

template <>
struct std::hash<rtshuffle::Partition> {
  std::size_t operator()(const rtshuffle::Partition& p) const noexcept;
};
