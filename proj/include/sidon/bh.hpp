#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sidon/errors.hpp"
#include "sidon/group.hpp"
#include "sidon/multisets.hpp"

namespace sidon {

/// Two inequivalent equal-length multisets with the same group sum.  "Proper"
/// means the two sides are disjoint as multisets.  A distinguished external
/// element may be tracked; its multiplicity on the left side is the u of the
/// subtraction algorithm.
class DoubleRepresentation {
 public:
  /// Plain form: the lexicographically smaller side is stored on the left.
  [[nodiscard]] static DoubleRepresentation canonical(const Group& group,
                                                      HMultiset a, HMultiset b) {
    if (b < a) std::swap(a, b);
    return DoubleRepresentation(group, std::move(a), std::move(b), std::nullopt);
  }

  /// Tracked form: the side containing x is stored on the left.  x may appear
  /// on at most one side; it need not appear at all (multiplicity 0).
  [[nodiscard]] static DoubleRepresentation with_distinguished(const Group& group,
                                                               HMultiset a,
                                                               HMultiset b,
                                                               Element x) {
    const Element cx = group.canonicalize(x);
    const auto in_a = a.count(cx);
    const auto in_b = b.count(cx);
    if (in_a > 0 && in_b > 0) {
      throw UsageError("distinguished element " + std::to_string(cx) +
                       " appears on both sides");
    }
    if (in_b > 0 || (in_a == 0 && b < a)) std::swap(a, b);
    return DoubleRepresentation(group, std::move(a), std::move(b), cx);
  }

  [[nodiscard]] const HMultiset& left() const { return left_; }
  [[nodiscard]] const HMultiset& right() const { return right_; }
  [[nodiscard]] const Group& group() const { return group_; }
  [[nodiscard]] std::size_t length() const { return left_.length(); }
  [[nodiscard]] bool proper() const { return proper_; }
  [[nodiscard]] std::optional<Element> distinguished() const { return distinguished_; }

  /// Multiplicity of the distinguished element on the left side; 0 when no
  /// element is tracked.
  [[nodiscard]] std::int64_t external_multiplicity() const {
    return distinguished_ ? left_.count(*distinguished_) : 0;
  }

  /// The equation in the form "a_1 + ... + a_l = a'_1 + ... + a'_l".
  [[nodiscard]] std::string equation() const {
    auto side = [](const HMultiset& m) {
      std::string out;
      for (std::size_t i = 0; i < m.entries().size(); ++i) {
        if (i) out += " + ";
        out += std::to_string(m.entries()[i]);
      }
      return out;
    };
    return side(left_) + " = " + side(right_);
  }

  [[nodiscard]] bool operator==(const DoubleRepresentation& other) const {
    return left_ == other.left_ && right_ == other.right_;
  }

 private:
  DoubleRepresentation(const Group& group, HMultiset left, HMultiset right,
                       std::optional<Element> distinguished)
      : group_(group),
        left_(std::move(left)),
        right_(std::move(right)),
        distinguished_(distinguished) {
    if (left_.length() != right_.length()) {
      throw UsageError("double representation sides have different lengths");
    }
    if (left_.sum() != right_.sum()) {
      throw UsageError("double representation sides have different sums");
    }
    if (left_ == right_) {
      throw UsageError("double representation sides are equivalent");
    }
    proper_ = multiset_intersection_size(left_, right_) == 0;
  }

  Group group_;
  HMultiset left_;
  HMultiset right_;
  std::optional<Element> distinguished_;
  bool proper_;
};

/// Certificate that a set is not B_{h,k}: an equal-sum pair of h-multisets
/// whose multiset overlap falls below k.
struct BhkWitness {
  DoubleRepresentation violation;
  std::int64_t overlap;
};

struct MembershipResult {
  bool member;
  std::optional<BhkWitness> witness;  // present iff !member

  explicit operator bool() const { return member; }
};

namespace detail {

struct OverlapScan {
  std::int64_t min_overlap;  // h when no inequivalent equal-sum pair exists
  std::optional<std::pair<HMultiset, HMultiset>> best;
};

/// Scans every unordered pair of distinct equal-sum h-multisets over A.
/// With stop_below set, returns at the first pair with overlap < stop_below;
/// otherwise performs the full scan and reports the pair of minimal overlap,
/// ties broken by lexicographic order of (left, right).
inline OverlapScan scan_equal_sum_overlaps(const GroundSet& a, int h,
                                           std::uint64_t cap,
                                           std::optional<std::int64_t> stop_below) {
  const SumBuckets buckets = sum_buckets(a, h, cap);
  OverlapScan scan{h, std::nullopt};
  for (const auto& [sum, list] : buckets.buckets()) {
    (void)sum;
    for (std::size_t i = 0; i + 1 < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        const std::int64_t ov = multiset_intersection_size(list[i], list[j]);
        const bool better =
            !scan.best || ov < scan.min_overlap ||
            (ov == scan.min_overlap &&
             std::pair(list[i], list[j]) < *scan.best);
        if (better) {
          scan.min_overlap = ov;
          scan.best = std::pair(list[i], list[j]);
        }
        if (stop_below && ov < *stop_below) return scan;
      }
    }
  }
  return scan;
}

}  // namespace detail

/// Boolean-only B_h test with early exit on the first repeated sum.  The
/// independence oracle of the matroid layer; no witness is produced.
[[nodiscard]] inline bool is_bh_quick(const GroundSet& a, int h,
                                      std::uint64_t cap = kDefaultMultisetCap) {
  const std::uint64_t total = multiset_count(a.size(), h);
  if (total > cap) {
    throw ResourceError("B_h test needs " + std::to_string(total) +
                        " multisets, cap is " + std::to_string(cap));
  }
  std::unordered_set<Element> seen;
  seen.reserve(static_cast<std::size_t>(total));
  bool unique = true;
  for_each_h_multiset(a, h, [&](std::span<const Element>, Element s) {
    if (!unique) return;
    if (!seen.insert(s).second) unique = false;
  });
  return unique;
}

/// Boolean-only B_{h,k} test, exiting at the first violating pair.
[[nodiscard]] inline bool is_bhk_quick(const GroundSet& a, int h, int k,
                                       std::uint64_t cap = kDefaultMultisetCap) {
  if (k < 1 || k > h) throw UsageError("require 1 <= k <= h");
  if (k == h) return is_bh_quick(a, h, cap);
  return detail::scan_equal_sum_overlaps(a, h, cap, k).min_overlap >= k;
}

/// B_{h,k} membership: every pair of equal-sum h-multisets over A shares at
/// least k entries as a multiset.  On failure the witness is the pair of
/// minimal overlap, ties broken lexicographically.
[[nodiscard]] inline MembershipResult is_bhk(const GroundSet& a, int h, int k,
                                             std::uint64_t cap = kDefaultMultisetCap) {
  if (h < 1) throw UsageError("h must be >= 1");
  if (k < 1 || k > h) throw UsageError("require 1 <= k <= h");
  const auto scan = detail::scan_equal_sum_overlaps(a, h, cap, std::nullopt);
  if (scan.min_overlap >= k) return {true, std::nullopt};
  auto [left, right] = *scan.best;
  return {false,
          BhkWitness{DoubleRepresentation::canonical(a.group(), std::move(left),
                                                     std::move(right)),
                     scan.min_overlap}};
}

/// B_h membership: r_{A,h}(x) = 1 for every x in the sumset hA.  Identical to
/// the (h,h) case of is_bhk.
[[nodiscard]] inline MembershipResult is_bh(const GroundSet& a, int h,
                                            std::uint64_t cap = kDefaultMultisetCap) {
  if (h < 1) throw UsageError("h must be >= 1");
  return is_bhk(a, h, h, cap);
}

/// Largest k with A in B_{h,k}: the minimal multiset overlap over all pairs of
/// distinct equal-sum h-multisets, or h when A is a B_h-set.  0 means some
/// equal-sum pair is fully disjoint.
[[nodiscard]] inline std::int64_t classify_max_k(const GroundSet& a, int h,
                                                 std::uint64_t cap = kDefaultMultisetCap) {
  if (h < 1) throw UsageError("h must be >= 1");
  return detail::scan_equal_sum_overlaps(a, h, cap, std::nullopt).min_overlap;
}

namespace detail {

/// Removes the multiset intersection from both (sorted) sides.
inline std::pair<std::vector<Element>, std::vector<Element>> cancel_common(
    std::span<const Element> left, std::span<const Element> right) {
  std::vector<Element> l, r;
  std::size_t i = 0, j = 0;
  while (i < left.size() && j < right.size()) {
    if (left[i] == right[j]) {
      ++i;
      ++j;
    } else if (left[i] < right[j]) {
      l.push_back(left[i++]);
    } else {
      r.push_back(right[j++]);
    }
  }
  l.insert(l.end(), left.begin() + i, left.end());
  r.insert(r.end(), right.begin() + j, right.end());
  return {std::move(l), std::move(r)};
}

}  // namespace detail

/// Cancels elements appearing on both sides, yielding the unique proper
/// double representation of length l' with 1 <= l' <= l.  A tracked
/// distinguished element survives cancellation untouched (it lives on one
/// side only).
[[nodiscard]] inline DoubleRepresentation reduce_to_proper(
    const DoubleRepresentation& d) {
  if (d.proper()) return d;
  auto [l, r] = detail::cancel_common(d.left().entries(), d.right().entries());
  HMultiset left(d.group(), std::move(l));
  HMultiset right(d.group(), std::move(r));
  if (d.distinguished()) {
    return DoubleRepresentation::with_distinguished(
        d.group(), std::move(left), std::move(right), *d.distinguished());
  }
  return DoubleRepresentation::canonical(d.group(), std::move(left),
                                         std::move(right));
}

/// All proper double representations over A of each length l <= max_len,
/// deduplicated up to swapping sides (the lexicographically smaller side is
/// the left).  Ordered by length, then sum, then lexicographically.
[[nodiscard]] inline std::vector<DoubleRepresentation>
find_proper_double_representations(const GroundSet& a, int max_len,
                                   std::uint64_t cap = kDefaultMultisetCap) {
  if (max_len < 1) throw UsageError("max_len must be >= 1");
  std::vector<DoubleRepresentation> out;
  for (int len = 1; len <= max_len; ++len) {
    const SumBuckets buckets = sum_buckets(a, len, cap);
    for (const auto& [sum, list] : buckets.buckets()) {
      (void)sum;
      for (std::size_t i = 0; i + 1 < list.size(); ++i) {
        for (std::size_t j = i + 1; j < list.size(); ++j) {
          if (multiset_intersection_size(list[i], list[j]) == 0) {
            out.push_back(
                DoubleRepresentation::canonical(a.group(), list[i], list[j]));
          }
        }
      }
    }
  }
  return out;
}

/// Combines two proper double representations that share a distinguished
/// external element x with left-side multiplicities u < w: the cross sums
/// d1.right + d2.left and d1.left + d2.right are set equal and reduced.  The
/// result is a proper double representation carrying x with multiplicity
/// w - u.
[[nodiscard]] inline DoubleRepresentation subtraction_algorithm(
    const DoubleRepresentation& d1, const DoubleRepresentation& d2, Element x) {
  if (d1.group() != d2.group()) {
    throw UsageError("subtraction algorithm: representations over different groups");
  }
  const Group& g = d1.group();
  const Element cx = g.canonicalize(x);
  if (!d1.proper() || !d2.proper()) {
    throw UsageError("subtraction algorithm requires proper double representations");
  }
  if (d1.length() != d2.length()) {
    throw UsageError("subtraction algorithm requires equal lengths");
  }
  if (d1.right().count(cx) != 0 || d2.right().count(cx) != 0) {
    throw UsageError("external element must not appear on the right sides");
  }
  const std::int64_t u = d1.left().count(cx);
  const std::int64_t w = d2.left().count(cx);
  if (u < 1) {
    throw UsageError("first representation must contain the external element");
  }
  if (u >= w) {
    throw UsageError("require multiplicities u < w, got u=" + std::to_string(u) +
                     " w=" + std::to_string(w));
  }

  std::vector<Element> merged_left(d1.right().entries().begin(),
                                   d1.right().entries().end());
  merged_left.insert(merged_left.end(), d2.left().entries().begin(),
                     d2.left().entries().end());
  std::vector<Element> merged_right(d1.left().entries().begin(),
                                    d1.left().entries().end());
  merged_right.insert(merged_right.end(), d2.right().entries().begin(),
                      d2.right().entries().end());
  std::sort(merged_left.begin(), merged_left.end());
  std::sort(merged_right.begin(), merged_right.end());
  auto [l, r] = detail::cancel_common(merged_left, merged_right);
  return DoubleRepresentation::with_distinguished(g, HMultiset(g, std::move(l)),
                                                  HMultiset(g, std::move(r)), cx);
}

/// Extension step for generalized Sidon sets over the integers: for
/// 1 <= k < h/2, a verified member A of B_{h,k} \ B_{h,k+1} and any
/// b > h * max(A), the set A + {b} is again in B_{h,k} \ B_{h,k+1}.
[[nodiscard]] inline GroundSet extend_bhk(const GroundSet& a, int h, int k,
                                          Element b,
                                          std::uint64_t cap = kDefaultMultisetCap) {
  if (!a.group().is_integers()) {
    throw UsageError("extension step is only valid over the integers");
  }
  if (k < 1 || 2 * k >= h) {
    throw UsageError("extension step requires 1 <= k < h/2");
  }
  if (a.empty()) throw UsageError("extension step requires a nonempty set");
  const Element bound = detail::checked_mul(static_cast<Element>(h), a.max());
  if (b <= bound) {
    throw UsageError("hypothesis b > h*max(A) violated: " + std::to_string(b) +
                     " <= " + std::to_string(bound));
  }
  if (!is_bhk_quick(a, h, k, cap)) {
    throw UsageError("hypothesis A in B_{h,k} violated");
  }
  if (is_bhk_quick(a, h, k + 1, cap)) {
    throw UsageError("hypothesis A not in B_{h,k+1} violated");
  }
  return a.with_element(b);
}

}  // namespace sidon
