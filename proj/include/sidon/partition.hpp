#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "sidon/errors.hpp"

namespace sidon {

/// A partition of a set size: positive parts in nonincreasing order.
class PartitionMu {
 public:
  explicit PartitionMu(std::vector<std::int64_t> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1) {
        throw UsageError("partition parts must be positive");
      }
      if (i > 0 && parts_[i] > parts_[i - 1]) {
        throw UsageError("partition parts must be nonincreasing");
      }
    }
  }

  [[nodiscard]] const std::vector<std::int64_t>& parts() const { return parts_; }
  [[nodiscard]] std::size_t count() const { return parts_.size(); }
  [[nodiscard]] std::int64_t operator[](std::size_t i) const { return parts_[i]; }

  [[nodiscard]] std::int64_t sum() const {
    return std::accumulate(parts_.begin(), parts_.end(), std::int64_t{0});
  }

  /// mu_1 + ... + mu_j (1-based j, clamped to the number of parts).
  [[nodiscard]] std::int64_t prefix_sum(std::size_t j) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < j && i < parts_.size(); ++i) s += parts_[i];
    return s;
  }

  [[nodiscard]] std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(parts_[i]);
    }
    return out + ")";
  }

  [[nodiscard]] bool operator==(const PartitionMu& other) const = default;

 private:
  std::vector<std::int64_t> parts_;
};

/// All partitions of n, in descending lexicographic order of parts.
[[nodiscard]] inline std::vector<PartitionMu> all_partitions(std::int64_t n) {
  if (n < 0) throw UsageError("cannot partition a negative size");
  std::vector<PartitionMu> out;
  std::vector<std::int64_t> cur;
  auto rec = [&](auto&& self, std::int64_t remaining, std::int64_t max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (std::int64_t p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// The union-rank sequence rho_1 < rho_2 < ... < rho_k = |X|, ending at the
/// covering number k.  Empty for the empty ground set.
class RankProfile {
 public:
  explicit RankProfile(std::vector<std::int64_t> rho) : rho_(std::move(rho)) {}

  [[nodiscard]] const std::vector<std::int64_t>& rho() const { return rho_; }
  [[nodiscard]] std::size_t covering_number() const { return rho_.size(); }

  /// rho_k for 1-based k; constant at |X| beyond the covering number.
  [[nodiscard]] std::int64_t at(std::size_t k) const {
    if (k < 1) throw UsageError("rank profile index is 1-based");
    if (rho_.empty()) return 0;
    return k <= rho_.size() ? rho_[k - 1] : rho_.back();
  }

  [[nodiscard]] std::int64_t rank() const { return rho_.empty() ? 0 : rho_.front(); }

 private:
  std::vector<std::int64_t> rho_;
};

}  // namespace sidon
