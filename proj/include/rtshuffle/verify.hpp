#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rtshuffle {

/// One verified instance. `residual` is the largest discrepancy found, in
/// the units of the check (0 for an exact identity that holds; for
/// inequalities, the largest amount by which the bound is exceeded, so
/// values <= 0 pass).
struct CheckRecord {
  std::string family;
  std::string name;
  std::vector<std::pair<std::string, std::string>> inputs;
  double residual = 0.0;
  std::size_t cases = 0;
  bool passed = true;
  std::string detail;
};

struct VerifyOptions {
  std::vector<std::string> only;  ///< empty: every family
  std::optional<int> n;           ///< restricts size-indexed families to this n
  std::optional<int> j;           ///< restricts j-indexed families to this j
  bool inject_cache_fault = false;
  std::uint64_t seed = 20190501;
  int transfer_trials = 200;
};

/// orthogonality, oracle, lemma43, transfer, qcycle, series, certificate,
/// cache_integrity.
const std::vector<std::string>& verify_families();

/// Runs the selected families. Throws ArgumentError for an unknown family
/// or an unusable n/j, SizeLimitError when n exceeds a family's limit.
/// With inject_cache_fault the character cache is filled, one entry is
/// altered, and cache_integrity always runs.
std::vector<CheckRecord> run_verification(const VerifyOptions& options);

}  // namespace rtshuffle
