#include "rtshuffle/characters.hpp"

#include <algorithm>
#include <limits>

namespace rtshuffle {

// ---------------------------------------------------------------- cache

CharacterCache::CharacterCache(std::size_t max_entries) : max_entries_(max_entries) {}

CharacterCache::Shard& CharacterCache::shard_for(const std::string& key) {
  return shards_[std::hash<std::string>{}(key) % kShards];
}

const CharacterCache::Shard& CharacterCache::shard_for(const std::string& key) const {
  return shards_[std::hash<std::string>{}(key) % kShards];
}

bool CharacterCache::lookup(const std::string& key, Integer& value) const {
  const Shard& shard = shard_for(key);
  std::shared_lock lock(shard.mutex);
  const auto it = shard.map.find(key);
  if (it == shard.map.end()) {
    misses_.fetch_add(1, std::memory_order_relaxed);
    return false;
  }
  hits_.fetch_add(1, std::memory_order_relaxed);
  value = it->second;
  return true;
}

void CharacterCache::store(const std::string& key, const Integer& value) {
  if (max_entries_ != 0 && entries_.load(std::memory_order_relaxed) >= max_entries_) {
    clear();
    generations_.fetch_add(1, std::memory_order_relaxed);
  }
  Shard& shard = shard_for(key);
  std::unique_lock lock(shard.mutex);
  if (shard.map.emplace(key, value).second) {
    entries_.fetch_add(1, std::memory_order_relaxed);
  }
}

void CharacterCache::clear() {
  std::lock_guard guard(clear_mutex_);
  for (auto& shard : shards_) {
    std::unique_lock lock(shard.mutex);
    entries_.fetch_sub(shard.map.size(), std::memory_order_relaxed);
    shard.map.clear();
  }
}

CharacterCache::Stats CharacterCache::stats() const {
  Stats out;
  out.hits = hits_.load();
  out.misses = misses_.load();
  out.entries = entries_.load();
  out.generations = generations_.load();
  return out;
}

void CharacterCache::for_each(
    const std::function<void(const std::string&, const Integer&)>& visit) const {
  for (const auto& shard : shards_) {
    std::shared_lock lock(shard.mutex);
    for (const auto& [key, value] : shard.map) {
      visit(key, value);
    }
  }
}

bool CharacterCache::corrupt_one_entry() {
  for (auto& shard : shards_) {
    std::unique_lock lock(shard.mutex);
    if (!shard.map.empty()) {
      shard.map.begin()->second += 1;
      return true;
    }
  }
  return false;
}

CharacterCache& default_character_cache() {
  static CharacterCache cache;
  return cache;
}

// ---------------------------------------------------------------- keys

std::string character_key(const std::vector<int>& shape, const std::vector<int>& cycles) {
  std::string key;
  key.reserve(2 * (shape.size() + cycles.size()) + 2);
  const auto put = [&key](int v) {
    key.push_back(static_cast<char>(v & 0xff));
    key.push_back(static_cast<char>((v >> 8) & 0xff));
  };
  for (int part : shape) {
    put(part);
  }
  put(0);
  for (int cycle : cycles) {
    put(cycle);
  }
  return key;
}

void decode_character_key(const std::string& key, std::vector<int>& shape,
                          std::vector<int>& cycles) {
  shape.clear();
  cycles.clear();
  bool in_shape = true;
  for (std::size_t i = 0; i + 1 < key.size(); i += 2) {
    const int v = static_cast<unsigned char>(key[i]) |
                  (static_cast<unsigned char>(key[i + 1]) << 8);
    if (in_shape && v == 0) {
      in_shape = false;
    } else if (in_shape) {
      shape.push_back(v);
    } else {
      cycles.push_back(v);
    }
  }
}

// ---------------------------------------------------------------- MN rule

namespace {

struct Strip {
  std::vector<int> shape;
  int sign;
};

// Removals of a border strip of length r from `shape`, via first-column
// hook lengths (beta numbers): a strip removal moves one bead down by r.
std::vector<Strip> remove_strips(const std::vector<int>& shape, int r) {
  const int rows = static_cast<int>(shape.size());
  std::vector<int> beta(rows);
  for (int i = 0; i < rows; ++i) {
    beta[i] = shape[i] + (rows - 1 - i);
  }
  std::vector<Strip> out;
  for (int i = 0; i < rows; ++i) {
    const int target = beta[i] - r;
    if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) {
      continue;
    }
    int between = 0;
    for (int b : beta) {
      between += (b > target && b < beta[i]) ? 1 : 0;
    }
    std::vector<int> moved = beta;
    moved[i] = target;
    std::sort(moved.begin(), moved.end(), std::greater<>());
    std::vector<int> parts;
    for (int k = 0; k < rows; ++k) {
      const int part = moved[k] - (rows - 1 - k);
      if (part > 0) {
        parts.push_back(part);
      }
    }
    out.push_back({std::move(parts), (between % 2 == 0) ? 1 : -1});
  }
  return out;
}

// Additions of a border strip of length r to `shape`; shape is padded with
// enough empty rows for the strip to start a new row.
std::vector<Strip> add_strips(const std::vector<int>& shape, int r) {
  const int rows = static_cast<int>(shape.size()) + r;
  std::vector<int> beta(rows);
  for (int i = 0; i < rows; ++i) {
    const int part = i < static_cast<int>(shape.size()) ? shape[i] : 0;
    beta[i] = part + (rows - 1 - i);
  }
  std::vector<Strip> out;
  for (int i = 0; i < rows; ++i) {
    const int target = beta[i] + r;
    if (std::find(beta.begin(), beta.end(), target) != beta.end()) {
      continue;
    }
    int between = 0;
    for (int b : beta) {
      between += (b > beta[i] && b < target) ? 1 : 0;
    }
    std::vector<int> moved = beta;
    moved[i] = target;
    std::sort(moved.begin(), moved.end(), std::greater<>());
    std::vector<int> parts;
    for (int k = 0; k < rows; ++k) {
      const int part = moved[k] - (rows - 1 - k);
      if (part > 0) {
        parts.push_back(part);
      }
    }
    out.push_back({std::move(parts), (between % 2 == 0) ? 1 : -1});
  }
  return out;
}

Integer mn_recurse(const std::vector<int>& shape, const std::vector<int>& cycles,
                   std::size_t next, CharacterCache* cache) {
  if (next == cycles.size()) {
    return shape.empty() ? 1 : 0;
  }
  if (cycles[next] == 1) {
    // only fixed points remain: χ^ν(1^|ν|) = d_ν
    return dimension(Partition(shape));
  }
  std::string key;
  if (cache != nullptr) {
    key = character_key(shape, std::vector<int>(cycles.begin() + next, cycles.end()));
    Integer hit;
    if (cache->lookup(key, hit)) {
      return hit;
    }
  }
  Integer total = 0;
  for (const auto& strip : remove_strips(shape, cycles[next])) {
    const Integer sub = mn_recurse(strip.shape, cycles, next + 1, cache);
    if (strip.sign > 0) {
      total += sub;
    } else {
      total -= sub;
    }
  }
  if (cache != nullptr) {
    cache->store(key, total);
  }
  return total;
}

void check_sizes(const Partition& lambda, const Partition& mu) {
  if (lambda.size() != mu.size()) {
    throw ArgumentError("mn_character: |" + lambda.to_string() + "| != |" + mu.to_string() + "|");
  }
}

}  // namespace

Integer mn_character(const Partition& lambda, const Partition& mu, CharacterCache& cache) {
  check_sizes(lambda, mu);
  return mn_recurse(lambda.parts(), mu.parts(), 0, &cache);
}

Integer mn_character(const Partition& lambda, const Partition& mu) {
  return mn_character(lambda, mu, default_character_cache());
}

Integer mn_character_uncached(const Partition& lambda, const Partition& mu) {
  check_sizes(lambda, mu);
  return mn_recurse(lambda.parts(), mu.parts(), 0, nullptr);
}

// ---------------------------------------------------------------- classes, ratios

Integer class_size(const Partition& mu) {
  Integer denominator = 1;
  const auto& parts = mu.parts();
  for (std::size_t i = 0; i < parts.size();) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) {
      ++j;
    }
    const auto k = static_cast<unsigned>(j - i);
    denominator *= pow(Integer(parts[i]), k) * factorial(k);
    i = j;
  }
  Integer out = factorial(static_cast<unsigned>(mu.size()));
  mpz_divexact(out.get_mpz_t(), out.get_mpz_t(), denominator.get_mpz_t());
  return out;
}

long content_sum(const Partition& lambda) {
  long total = 0;
  for (int part : lambda.parts()) {
    total += static_cast<long>(part) * (part - 1) / 2;
  }
  const Partition columns = conjugate(lambda);
  for (int column : columns.parts()) {
    total -= static_cast<long>(column) * (column - 1) / 2;
  }
  return total;
}

Rational character_ratio(const Partition& lambda) {
  const long n = lambda.size();
  if (n < 2) {
    throw ArgumentError("character_ratio requires n >= 2");
  }
  Rational out(content_sum(lambda), n * (n - 1) / 2);
  out.canonicalize();
  return out;
}

Eigenvalue eigenvalue(const Partition& lambda) {
  const long n = lambda.size();
  Eigenvalue out;
  out.ratio = character_ratio(lambda);
  out.value = Rational(1, n) + Rational(n - 1, n) * out.ratio;
  return out;
}

long eigenvalue_numerator(const Partition& lambda) {
  if (lambda.size() < 2) {
    throw ArgumentError("eigenvalue requires n >= 2");
  }
  return lambda.size() + 2 * content_sum(lambda);
}

// ---------------------------------------------------------------- columns

CharacterColumns::CharacterColumns(int n, int max_depth) : n_(n), max_depth_(max_depth) {
  if (n < 0 || max_depth < 0) {
    throw ArgumentError("CharacterColumns: negative size or depth");
  }
  size_offset_.resize(static_cast<std::size_t>(n) + 2);
  for (int s = 0; s <= n; ++s) {
    size_offset_[s] = static_cast<int>(shapes_.size());
    for (auto& shape : enumerate_partitions_by_depth(s, max_depth)) {
      index_of_.emplace(shape, static_cast<int>(shapes_.size()));
      shapes_.push_back(std::move(shape));
    }
  }
  size_offset_[n + 1] = static_cast<int>(shapes_.size());

  shape_dimension_.reserve(shapes_.size());
  shape_dimension_small_.reserve(shapes_.size());
  for (const auto& shape : shapes_) {
    shape_dimension_.push_back(dimension(shape));
    const Integer& d = shape_dimension_.back();
    shape_dimension_small_.push_back(d.fits_slong_p() ? d.get_si() : -1);
  }

  const std::size_t stride = static_cast<std::size_t>(n) + 1;
  step_offset_.assign(shapes_.size() * stride + 1, 0);
  for (std::size_t idx = 0; idx < shapes_.size(); ++idx) {
    const Partition& shape = shapes_[idx];
    for (int r = 0; r <= n; ++r) {
      step_offset_[idx * stride + r] = static_cast<std::uint32_t>(steps_.size());
      if (r == 0 || shape.size() + r > n) {
        continue;
      }
      for (const auto& strip : add_strips(shape.parts(), r)) {
        const int target = shape_index(strip.shape);
        if (target >= 0) {
          steps_.push_back({target, strip.sign});
        }
      }
    }
  }
  step_offset_.back() = static_cast<std::uint32_t>(steps_.size());

  for (int i = size_offset_[n]; i < size_offset_[n + 1]; ++i) {
    representations_.push_back(shapes_[i]);
  }
}

int CharacterColumns::shape_index(const std::vector<int>& parts) const {
  int size = 0;
  for (int p : parts) {
    size += p;
  }
  const int first = parts.empty() ? 0 : parts.front();
  if (size - first > max_depth_) {
    return -1;
  }
  const auto it = index_of_.find(Partition(parts));
  return it == index_of_.end() ? -1 : it->second;
}

namespace {

inline bool accumulate(std::int64_t& slot, std::int64_t value, int sign) {
  return sign > 0 ? __builtin_add_overflow(slot, value, &slot)
                  : __builtin_sub_overflow(slot, value, &slot);
}

inline bool accumulate(Integer& slot, const Integer& value, int sign) {
  if (sign > 0) {
    slot += value;
  } else {
    slot -= value;
  }
  return false;
}

inline bool is_zero(std::int64_t v) { return v == 0; }
inline bool is_zero(const Integer& v) { return sgn(v) == 0; }

}  // namespace

template <typename Value>
bool CharacterColumns::run(const Partition& mu, std::vector<Value>& out) const {
  std::vector<int> cycles(mu.parts().rbegin(), mu.parts().rend());
  std::size_t next = 0;
  int size = 0;
  while (next < cycles.size() && cycles[next] == 1) {
    ++size;
    ++next;
  }

  // states for the current size, indexed relative to size_offset_[size]
  std::vector<Value> current(size_offset_[size + 1] - size_offset_[size], Value(0));
  for (std::size_t i = 0; i < current.size(); ++i) {
    const int global = size_offset_[size] + static_cast<int>(i);
    if constexpr (std::is_same_v<Value, std::int64_t>) {
      if (shape_dimension_small_[global] < 0) {
        return false;
      }
      current[i] = shape_dimension_small_[global];
    } else {
      current[i] = shape_dimension_[global];
    }
  }

  const std::size_t stride = static_cast<std::size_t>(n_) + 1;
  for (; next < cycles.size(); ++next) {
    const int r = cycles[next];
    const int new_size = size + r;
    std::vector<Value> upcoming(size_offset_[new_size + 1] - size_offset_[new_size], Value(0));
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (is_zero(current[i])) {
        continue;
      }
      const std::size_t global = static_cast<std::size_t>(size_offset_[size]) + i;
      const std::uint32_t begin = step_offset_[global * stride + r];
      const std::uint32_t end = step_offset_[global * stride + r + 1];
      for (std::uint32_t s = begin; s < end; ++s) {
        const Step& step = steps_[s];
        if (accumulate(upcoming[step.target - size_offset_[new_size]], current[i], step.sign)) {
          return false;
        }
      }
    }
    current = std::move(upcoming);
    size = new_size;
  }
  out = std::move(current);
  return true;
}

std::vector<Integer> CharacterColumns::column(const Partition& mu) const {
  if (mu.size() != n_) {
    throw ArgumentError("CharacterColumns::column: class " + mu.to_string() +
                        " is not a partition of " + std::to_string(n_));
  }
  std::vector<Integer> out;
  std::vector<std::int64_t> small;
  if (run(mu, small)) {
    out.reserve(small.size());
    for (std::int64_t v : small) {
      out.emplace_back(static_cast<long>(v));
    }
    return out;
  }
  run(mu, out);
  return out;
}

}  // namespace rtshuffle
