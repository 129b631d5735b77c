#include "rtshuffle/partition.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace rtshuffle {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 1) {
      throw ArgumentError("partition parts must be positive");
    }
    if (i > 0 && parts_[i] > parts_[i - 1]) {
      throw ArgumentError("partition parts must be weakly decreasing");
    }
    size_ += parts_[i];
  }
}

Partition::Partition(std::initializer_list<int> parts)
    : Partition(std::vector<int>(parts)) {}

Partition Partition::parse(std::string_view text) {
  std::vector<int> parts;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto field = text.substr(0, comma);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      throw ArgumentError("malformed partition: '" + std::string(text) + "'");
    }
    parts.push_back(value);
    if (comma == std::string_view::npos) {
      break;
    }
    text.remove_prefix(comma + 1);
  }
  return Partition(std::move(parts));
}

Partition Partition::with_first_row(int first_row, const Partition& tail) {
  std::vector<int> parts;
  parts.reserve(tail.parts_.size() + 1);
  if (first_row > 0) {
    parts.push_back(first_row);
  }
  parts.insert(parts.end(), tail.parts_.begin(), tail.parts_.end());
  return Partition(std::move(parts));
}

Partition Partition::tail() const {
  if (parts_.empty()) {
    return {};
  }
  Partition out;
  out.parts_.assign(parts_.begin() + 1, parts_.end());
  out.size_ = size_ - parts_.front();
  return out;
}

int Partition::multiplicity(int q) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), q));
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += std::to_string(parts_[i]);
  }
  return out;
}

namespace {

// Appends every partition of `remaining` with parts at most `cap` to `out`,
// prefixed by `prefix`, in reverse lexicographic order.
void append_partitions(int remaining, int cap, std::vector<int>& prefix,
                       std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (int part = std::min(remaining, cap); part >= 1; --part) {
    prefix.push_back(part);
    append_partitions(remaining - part, part, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int m) {
  if (m < 0) {
    throw ArgumentError("cannot enumerate partitions of a negative integer");
  }
  if (m > kMaxEnumeratedSize) {
    throw SizeLimitError("enumerate_partitions: m = " + std::to_string(m) +
                         " exceeds the limit " + std::to_string(kMaxEnumeratedSize));
  }
  std::vector<Partition> out;
  std::vector<int> prefix;
  append_partitions(m, m, prefix, out);
  return out;
}

std::vector<Partition> enumerate_partitions_by_depth(int n, int max_depth) {
  if (n < 0) {
    throw ArgumentError("cannot enumerate partitions of a negative integer");
  }
  std::vector<Partition> out;
  for (int j = 0; j <= std::min(max_depth, n); ++j) {
    const int first = n - j;
    std::vector<Partition> tails;
    std::vector<int> prefix;
    append_partitions(j, std::min(j, first), prefix, tails);
    for (const auto& tail : tails) {
      out.push_back(Partition::with_first_row(first, tail));
    }
  }
  return out;
}

Integer partition_count(int m) {
  if (m < 0) {
    return 0;
  }
  std::vector<Integer> p(static_cast<std::size_t>(m) + 1);
  p[0] = 1;
  for (int i = 1; i <= m; ++i) {
    Integer total = 0;
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      const int g2 = k * (3 * k + 1) / 2;
      if (g1 > i) {
        break;
      }
      const bool add = (k % 2) == 1;
      if (add) {
        total += p[i - g1];
      } else {
        total -= p[i - g1];
      }
      if (g2 <= i) {
        if (add) {
          total += p[i - g2];
        } else {
          total -= p[i - g2];
        }
      }
    }
    p[i] = total;
  }
  return p[m];
}

Partition conjugate(const Partition& lambda) {
  std::vector<int> columns(static_cast<std::size_t>(lambda.first_row()), 0);
  for (int row : lambda.parts()) {
    for (int c = 0; c < row; ++c) {
      ++columns[c];
    }
  }
  return Partition(std::move(columns));
}

std::vector<std::vector<int>> hook_lengths(const Partition& lambda) {
  const Partition columns = conjugate(lambda);
  std::vector<std::vector<int>> hooks(lambda.parts().size());
  for (int i = 0; i < lambda.length(); ++i) {
    hooks[i].resize(lambda[i]);
    for (int j = 0; j < lambda[i]; ++j) {
      hooks[i][j] = (lambda[i] - j - 1) + (columns[j] - i - 1) + 1;
    }
  }
  return hooks;
}

Integer hook_product(const Partition& lambda) {
  Integer product = 1;
  for (const auto& row : hook_lengths(lambda)) {
    for (int h : row) {
      product *= h;
    }
  }
  return product;
}

Integer dimension(const Partition& lambda) {
  Integer out = factorial(static_cast<unsigned>(lambda.size()));
  mpz_divexact(out.get_mpz_t(), out.get_mpz_t(), hook_product(lambda).get_mpz_t());
  return out;
}

std::vector<Partition> covers(const Partition& lambda) {
  std::vector<Partition> out;
  const auto& parts = lambda.parts();
  for (std::size_t i = 0; i <= parts.size(); ++i) {
    const int current = i < parts.size() ? parts[i] : 0;
    if (i > 0 && parts[i - 1] == current) {
      continue;
    }
    std::vector<int> grown = parts;
    if (i < parts.size()) {
      ++grown[i];
    } else {
      grown.push_back(1);
    }
    out.emplace_back(std::move(grown));
  }
  return out;
}

WeightRow extend_weights(const WeightRow& weights, int j) {
  WeightRow next;
  for (const auto& big : enumerate_partitions(j + 1)) {
    next.emplace(big, Rational(0));
  }
  for (const auto& [small, weight] : weights) {
    if (small.size() != j) {
      throw ArgumentError("extend_weights: key " + small.to_string() +
                          " is not a partition of " + std::to_string(j));
    }
    for (const auto& big : covers(small)) {
      next[big] += weight;
    }
  }
  return next;
}

}  // namespace rtshuffle

std::size_t std::hash<rtshuffle::Partition>::operator()(
    const rtshuffle::Partition& p) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int part : p.parts()) {
    h ^= static_cast<std::size_t>(part);
    h *= 0x100000001b3ULL;
  }
  return h;
}
