#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sidon/errors.hpp"
#include "sidon/group.hpp"

namespace sidon {

/// Default ceiling on the number of h-multisets an operation may materialize.
inline constexpr std::uint64_t kDefaultMultisetCap = 5'000'000;

/// A finite set of distinct group elements, stored strictly sorted in
/// canonical form.  The empty set is a valid ground set.
class GroundSet {
 public:
  GroundSet(Group group, std::vector<Element> elements)
      : group_(group), elems_(std::move(elements)) {
    for (Element& e : elems_) e = group_.canonicalize(e);
    std::sort(elems_.begin(), elems_.end());
    auto dup = std::adjacent_find(elems_.begin(), elems_.end());
    if (dup != elems_.end()) {
      throw UsageError("duplicate element " + std::to_string(*dup) +
                       " in ground set over " + group_.name());
    }
  }

  [[nodiscard]] static GroundSet integers(std::vector<Element> elements) {
    return GroundSet(Group::integers(), std::move(elements));
  }

  [[nodiscard]] const Group& group() const { return group_; }
  [[nodiscard]] std::span<const Element> elements() const { return elems_; }
  [[nodiscard]] std::size_t size() const { return elems_.size(); }
  [[nodiscard]] bool empty() const { return elems_.empty(); }
  [[nodiscard]] Element operator[](std::size_t i) const { return elems_[i]; }

  [[nodiscard]] bool contains(Element v) const {
    return std::binary_search(elems_.begin(), elems_.end(),
                              group_.canonicalize(v));
  }

  [[nodiscard]] bool contains_all(std::span<const Element> vs) const {
    return std::all_of(vs.begin(), vs.end(),
                       [&](Element v) { return contains(v); });
  }

  [[nodiscard]] Element max() const {
    if (elems_.empty()) throw UsageError("max of empty ground set");
    return elems_.back();
  }

  /// Set union with one extra element; rejects elements already present.
  [[nodiscard]] GroundSet with_element(Element v) const {
    if (contains(v)) {
      throw UsageError("element " + std::to_string(v) + " already present");
    }
    std::vector<Element> next = elems_;
    next.push_back(group_.canonicalize(v));
    return GroundSet(group_, std::move(next));
  }

  [[nodiscard]] GroundSet without_element(Element v) const {
    std::vector<Element> next;
    Element c = group_.canonicalize(v);
    for (Element e : elems_)
      if (e != c) next.push_back(e);
    return GroundSet(group_, std::move(next));
  }

  /// Restriction to a sorted subset of this set's elements.
  [[nodiscard]] GroundSet restrict_to(std::span<const Element> subset) const {
    if (!contains_all(subset)) {
      throw UsageError("restriction target is not a subset of the ground set");
    }
    return GroundSet(group_, std::vector<Element>(subset.begin(), subset.end()));
  }

  [[nodiscard]] bool operator==(const GroundSet& other) const = default;

 private:
  Group group_;
  std::vector<Element> elems_;
};

/// The translation x + A.
[[nodiscard]] inline GroundSet translate(const GroundSet& a, Element x) {
  std::vector<Element> out;
  out.reserve(a.size());
  for (Element e : a.elements()) out.push_back(a.group().add(e, x));
  return GroundSet(a.group(), std::move(out));
}

/// The reflection x - A.
[[nodiscard]] inline GroundSet reflect(const GroundSet& a, Element x) {
  std::vector<Element> out;
  out.reserve(a.size());
  for (Element e : a.elements()) out.push_back(a.group().subtract(x, e));
  return GroundSet(a.group(), std::move(out));
}

/// Canonical representative of an equivalence class of h-tuples: entries
/// sorted nondecreasing, with the group sum cached.  Two h-tuples are
/// equivalent (equal up to permutation) iff their canonical forms compare
/// equal.
class HMultiset {
 public:
  HMultiset(const Group& group, std::vector<Element> entries)
      : entries_(std::move(entries)) {
    if (entries_.empty()) throw UsageError("h-multiset must be nonempty");
    std::sort(entries_.begin(), entries_.end());
    sum_ = group.sum(entries_);
  }

  /// Fast path: entries already sorted, sum already known.
  [[nodiscard]] static HMultiset from_sorted(std::vector<Element> entries,
                                             Element sum) {
    return HMultiset(std::move(entries), sum);
  }

  [[nodiscard]] std::span<const Element> entries() const { return entries_; }
  [[nodiscard]] std::size_t length() const { return entries_.size(); }
  [[nodiscard]] Element sum() const { return sum_; }

  [[nodiscard]] std::int64_t count(Element v) const {
    auto [lo, hi] = std::equal_range(entries_.begin(), entries_.end(), v);
    return hi - lo;
  }

  [[nodiscard]] bool operator==(const HMultiset& other) const {
    return entries_ == other.entries_;
  }
  [[nodiscard]] auto operator<=>(const HMultiset& other) const {
    return entries_ <=> other.entries_;
  }

  friend std::ostream& operator<<(std::ostream& os, const HMultiset& m) {
    os << '{';
    for (std::size_t i = 0; i < m.entries_.size(); ++i) {
      if (i) os << ',';
      os << m.entries_[i];
    }
    return os << '}';
  }

 private:
  HMultiset(std::vector<Element> entries, Element sum)
      : entries_(std::move(entries)), sum_(sum) {}

  std::vector<Element> entries_;
  Element sum_;
};

/// Size of the multiset intersection: sum over values of min multiplicity.
/// This equals the largest k for which index sets I, I' of size k and a
/// bijection matching equal entries exist between the two tuples.
[[nodiscard]] inline std::int64_t multiset_intersection_size(
    const HMultiset& s, const HMultiset& t) {
  if (s.length() != t.length()) {
    throw UsageError("multiset intersection requires equal lengths");
  }
  std::int64_t overlap = 0;
  auto a = s.entries();
  auto b = t.entries();
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++overlap;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return overlap;
}

/// Number of h-multisets over an n-element set: C(n+h-1, h).
/// Saturates to UINT64_MAX on overflow (any realistic cap is smaller).
[[nodiscard]] inline std::uint64_t multiset_count(std::size_t n, int h) {
  if (h < 1) throw UsageError("h must be >= 1");
  if (n == 0) return 0;
  // C(n+h-1, h) multiplicatively, guarding each step.
  std::uint64_t result = 1;
  for (int i = 1; i <= h; ++i) {
    std::uint64_t factor = n - 1 + static_cast<std::uint64_t>(i);
    if (result > UINT64_MAX / factor) return UINT64_MAX;
    result = result * factor / static_cast<std::uint64_t>(i);
  }
  return result;
}

/// Visits every h-multiset over A exactly once, in lexicographic order of the
/// (nondecreasing) entry list.  The callback receives the sorted entries and
/// their group sum; the span is only valid during the call.
template <typename Fn>
void for_each_h_multiset(const GroundSet& a, int h, Fn&& fn) {
  if (h < 1) throw UsageError("h must be >= 1");
  const std::size_t n = a.size();
  if (n == 0) return;
  const Group& g = a.group();

  std::vector<std::size_t> idx(static_cast<std::size_t>(h), 0);
  std::vector<Element> buf(static_cast<std::size_t>(h));
  for (;;) {
    Element s = 0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      buf[j] = a[idx[j]];
      s = g.add(s, buf[j]);
    }
    fn(std::span<const Element>(buf), s);

    // Advance the rightmost index that can still move; reset the tail to it.
    std::size_t pos = idx.size();
    while (pos > 0 && idx[pos - 1] == n - 1) --pos;
    if (pos == 0) break;
    const std::size_t next = idx[pos - 1] + 1;
    for (std::size_t j = pos - 1; j < idx.size(); ++j) idx[j] = next;
  }
}

/// All h-multisets over A, materialized in lexicographic order.
[[nodiscard]] inline std::vector<HMultiset> enumerate_h_multisets(
    const GroundSet& a, int h, std::uint64_t cap = kDefaultMultisetCap) {
  const std::uint64_t total = multiset_count(a.size(), h);
  if (total > cap) {
    throw ResourceError("h-multiset enumeration needs " +
                        std::to_string(total) + " entries, cap is " +
                        std::to_string(cap));
  }
  std::vector<HMultiset> out;
  out.reserve(total);
  for_each_h_multiset(a, h, [&](std::span<const Element> entries, Element s) {
    out.push_back(HMultiset::from_sorted(
        std::vector<Element>(entries.begin(), entries.end()), s));
  });
  return out;
}

/// The h-fold sumset hA: all values taken by sums of h elements of A with
/// repetition, sorted ascending.
[[nodiscard]] inline std::vector<Element> h_fold_sumset(const GroundSet& a,
                                                        int h) {
  std::vector<Element> sums;
  for_each_h_multiset(a, h,
                      [&](std::span<const Element>, Element s) { sums.push_back(s); });
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  return sums;
}

/// r_{A,h}(x): the number of inequivalent representations of x as a sum of h
/// elements of A; 0 when x lies outside hA.
[[nodiscard]] inline std::int64_t representation_function(const GroundSet& a,
                                                          int h, Element x) {
  const Element target = a.group().canonicalize(x);
  std::int64_t count = 0;
  for_each_h_multiset(a, h, [&](std::span<const Element>, Element s) {
    if (s == target) ++count;
  });
  return count;
}

/// All h-multisets over a ground set, grouped by their sum.  The single shared
/// accelerator behind the B_h and B_{h,k} membership tests: both reduce to
/// inspecting pairs inside one bucket.
class SumBuckets {
 public:
  [[nodiscard]] static SumBuckets build(const GroundSet& a, int h,
                                        std::uint64_t cap = kDefaultMultisetCap) {
    const std::uint64_t total = multiset_count(a.size(), h);
    if (total > cap) {
      throw ResourceError("sum-bucket index needs " + std::to_string(total) +
                          " multisets, cap is " + std::to_string(cap));
    }
    SumBuckets out;
    out.total_ = total;
    for_each_h_multiset(a, h, [&](std::span<const Element> entries, Element s) {
      out.buckets_[s].push_back(HMultiset::from_sorted(
          std::vector<Element>(entries.begin(), entries.end()), s));
    });
    return out;
  }

  [[nodiscard]] const std::map<Element, std::vector<HMultiset>>& buckets() const {
    return buckets_;
  }

  [[nodiscard]] std::uint64_t total_multisets() const { return total_; }

  [[nodiscard]] std::int64_t bucket_size(Element sum) const {
    auto it = buckets_.find(sum);
    return it == buckets_.end() ? 0 : static_cast<std::int64_t>(it->second.size());
  }

 private:
  std::map<Element, std::vector<HMultiset>> buckets_;
  std::uint64_t total_ = 0;
};

[[nodiscard]] inline SumBuckets sum_buckets(const GroundSet& a, int h,
                                            std::uint64_t cap = kDefaultMultisetCap) {
  return SumBuckets::build(a, h, cap);
}

}  // namespace sidon
