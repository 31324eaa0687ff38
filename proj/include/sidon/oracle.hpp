#pragma once

// Brute-force reference layer.  Everything here is recomputed from the
// definitions: ordered tuples, exhaustive subset scans, exhaustive part
// assignments.  No algorithm is shared with the fast paths (only the group
// arithmetic and the passive GroundSet container), so agreement between the
// two layers is meaningful evidence.  Deliberately naive; guarded by small
// size caps.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sidon/errors.hpp"
#include "sidon/group.hpp"
#include "sidon/multisets.hpp"
#include "sidon/partition.hpp"

namespace sidon::oracle {

/// Largest ground-set size the brute-force scans accept.
inline constexpr std::size_t kDefaultBruteCap = 16;

/// Largest number of ordered h-tuples a naive membership test will visit.
inline constexpr std::uint64_t kDefaultTupleCap = 20'000'000;

namespace detail {

inline void check_size(const GroundSet& x, std::size_t cap, const char* op) {
  if (x.size() > cap) {
    throw ResourceError(std::string(op) + ": ground set has " +
                        std::to_string(x.size()) + " elements, cap is " +
                        std::to_string(cap));
  }
}

/// Equivalence classes of ordered h-tuples, keyed by sum.  Walks all n^h
/// ordered tuples and canonicalizes each by sorting, which is exactly the
/// "equal after renumbering" equivalence.
inline std::map<Element, std::set<std::vector<Element>>> tuple_classes_by_sum(
    const GroundSet& a, int h, std::uint64_t tuple_cap = kDefaultTupleCap) {
  if (h < 1) throw UsageError("h must be >= 1");
  const std::size_t n = a.size();
  std::map<Element, std::set<std::vector<Element>>> classes;
  if (n == 0) return classes;

  std::uint64_t tuples = 1;
  for (int i = 0; i < h; ++i) {
    if (tuples > tuple_cap / n + 1) {
      throw ResourceError("naive membership test would visit more than " +
                          std::to_string(tuple_cap) + " tuples");
    }
    tuples *= n;
  }
  if (tuples > tuple_cap) {
    throw ResourceError("naive membership test would visit " +
                        std::to_string(tuples) + " tuples, cap is " +
                        std::to_string(tuple_cap));
  }

  std::vector<std::size_t> idx(static_cast<std::size_t>(h), 0);
  std::vector<Element> tuple(static_cast<std::size_t>(h));
  for (;;) {
    Element s = 0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      tuple[j] = a[idx[j]];
      s = a.group().add(s, tuple[j]);
    }
    std::vector<Element> sorted = tuple;
    std::sort(sorted.begin(), sorted.end());
    classes[s].insert(std::move(sorted));

    std::size_t pos = idx.size();
    while (pos > 0 && idx[pos - 1] == n - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < idx.size(); ++j) idx[j] = 0;
  }
  return classes;
}

/// Overlap between two equal-length sorted tuples, computed as a greedy
/// matching of equal values with used-flags (a literal construction of the
/// injection between index sets).
inline std::int64_t tuple_overlap(const std::vector<Element>& s,
                                  const std::vector<Element>& t) {
  std::vector<bool> used(t.size(), false);
  std::int64_t overlap = 0;
  for (const Element v : s) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (!used[j] && t[j] == v) {
        used[j] = true;
        ++overlap;
        break;
      }
    }
  }
  return overlap;
}

}  // namespace detail

/// Definition-level B_h test: every sum is realized by exactly one
/// equivalence class of h-tuples.
[[nodiscard]] inline bool is_bh_naive(const GroundSet& a, int h,
                                      std::uint64_t tuple_cap = kDefaultTupleCap) {
  for (const auto& [sum, classes] : detail::tuple_classes_by_sum(a, h, tuple_cap)) {
    (void)sum;
    if (classes.size() > 1) return false;
  }
  return true;
}

/// Definition-level B_{h,k} test: any two equal-sum h-tuples admit a matching
/// of at least k equal entries.
[[nodiscard]] inline bool is_bhk_naive(const GroundSet& a, int h, int k,
                                       std::uint64_t tuple_cap = kDefaultTupleCap) {
  if (k < 1 || k > h) throw UsageError("require 1 <= k <= h");
  for (const auto& [sum, classes] : detail::tuple_classes_by_sum(a, h, tuple_cap)) {
    (void)sum;
    for (auto i = classes.begin(); i != classes.end(); ++i) {
      for (auto j = std::next(i); j != classes.end(); ++j) {
        if (detail::tuple_overlap(*i, *j) < k) return false;
      }
    }
  }
  return true;
}

/// All B_h-subsets of X, enumerated by depth-first extension in element
/// order.  Supersets of dependent sets are pruned, which is sound because
/// the B_h property is hereditary.
[[nodiscard]] inline std::vector<std::vector<Element>> all_independent_subsets(
    const GroundSet& x, int h, std::size_t cap = kDefaultBruteCap) {
  detail::check_size(x, cap, "independent-subset enumeration");
  std::vector<std::vector<Element>> out;
  out.push_back({});  // the empty set
  std::vector<Element> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    for (std::size_t i = start; i < x.size(); ++i) {
      cur.push_back(x[i]);
      if (is_bh_naive(GroundSet(x.group(), cur), h)) {
        out.push_back(cur);
        self(self, i + 1);
      }
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// All inclusion-maximal B_h-subsets of X, in lexicographic order.
[[nodiscard]] inline std::vector<std::vector<Element>> brute_maximal_independents(
    const GroundSet& x, int h, std::size_t cap = kDefaultBruteCap) {
  const auto independents = all_independent_subsets(x, h, cap);
  std::set<std::vector<Element>> lookup(independents.begin(), independents.end());

  std::vector<std::vector<Element>> maximal;
  for (const auto& s : independents) {
    bool extendable = false;
    for (const Element e : x.elements()) {
      if (std::binary_search(s.begin(), s.end(), e)) continue;
      std::vector<Element> ext = s;
      ext.insert(std::upper_bound(ext.begin(), ext.end(), e), e);
      if (lookup.contains(ext)) {
        extendable = true;
        break;
      }
    }
    if (!extendable) maximal.push_back(s);
  }
  return maximal;
}

/// Size of the largest B_h-subset of X.
[[nodiscard]] inline std::int64_t brute_max_independent_size(
    const GroundSet& x, int h, std::size_t cap = kDefaultBruteCap) {
  std::int64_t best = 0;
  for (const auto& s : all_independent_subsets(x, h, cap)) {
    best = std::max<std::int64_t>(best, static_cast<std::int64_t>(s.size()));
  }
  return best;
}

namespace detail {

/// Exhaustive search for an assignment of the elements to at most k parts,
/// every part a B_h-set.  Parts are opened left to right to break symmetry.
inline bool assign_into_parts(const GroundSet& x, int h,
                              std::span<const Element> todo,
                              std::vector<std::vector<Element>>& parts,
                              std::size_t open, std::size_t max_parts) {
  if (todo.empty()) return true;
  const Element e = todo.front();
  const auto rest = todo.subspan(1);
  const std::size_t tryable = std::min(open + 1, max_parts);
  for (std::size_t j = 0; j < tryable; ++j) {
    parts[j].push_back(e);
    if (is_bh_naive(GroundSet(x.group(), parts[j]), h) &&
        assign_into_parts(x, h, rest, parts, std::max(open, j + 1), max_parts)) {
      parts[j].pop_back();
      return true;
    }
    parts[j].pop_back();
  }
  return false;
}

inline bool partitionable(const GroundSet& x, int h,
                          std::span<const Element> elems, std::size_t k) {
  std::vector<std::vector<Element>> parts(k);
  return assign_into_parts(x, h, elems, parts, 0, k);
}

}  // namespace detail

/// Exhaustive union rank: the size of the largest subset of X that splits
/// into k B_h-sets, found by scanning subsets in decreasing size.
[[nodiscard]] inline std::int64_t brute_union_rank(const GroundSet& x, int h, int k,
                                                   std::size_t cap = kDefaultBruteCap) {
  detail::check_size(x, cap, "brute union rank");
  if (k < 1) throw UsageError("union rank requires k >= 1");
  const std::size_t n = x.size();
  for (std::size_t size = n; size > 0; --size) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
      std::vector<Element> subset;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::uint64_t{1} << i)) subset.push_back(x[i]);
      }
      if (detail::partitionable(x, h, subset, static_cast<std::size_t>(k))) {
        return static_cast<std::int64_t>(size);
      }
    }
  }
  return 0;
}

/// Smallest k such that X splits into k B_h-sets; 0 for the empty set.
[[nodiscard]] inline std::int64_t brute_covering_number(
    const GroundSet& x, int h, std::size_t cap = kDefaultBruteCap) {
  detail::check_size(x, cap, "brute covering number");
  if (x.empty()) return 0;
  for (std::size_t k = 1;; ++k) {
    if (detail::partitionable(x, h, x.elements(), k)) {
      return static_cast<std::int64_t>(k);
    }
  }
}

namespace detail {

inline bool assign_with_sizes(const GroundSet& x, int h,
                              std::span<const Element> todo,
                              std::vector<std::vector<Element>>& parts,
                              const std::vector<std::int64_t>& sizes) {
  if (todo.empty()) return true;
  const Element e = todo.front();
  const auto rest = todo.subspan(1);
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (static_cast<std::int64_t>(parts[j].size()) >= sizes[j]) continue;
    // Equal-capacity empty parts are interchangeable; only try the first.
    if (parts[j].empty() && j > 0 && parts[j - 1].empty() && sizes[j] == sizes[j - 1]) {
      continue;
    }
    parts[j].push_back(e);
    if (is_bh_naive(GroundSet(x.group(), parts[j]), h) &&
        assign_with_sizes(x, h, rest, parts, sizes)) {
      parts[j].pop_back();
      return true;
    }
    parts[j].pop_back();
  }
  return false;
}

}  // namespace detail

/// Exhaustive test for a partition of X into pairwise disjoint B_h-sets with
/// the exact part sizes mu_1 >= ... >= mu_r.
[[nodiscard]] inline bool brute_mu_partition_exists(const GroundSet& x, int h,
                                                    const PartitionMu& mu,
                                                    std::size_t cap = kDefaultBruteCap) {
  detail::check_size(x, cap, "brute mu-partition search");
  if (mu.sum() != static_cast<std::int64_t>(x.size())) {
    throw UsageError("mu is not a partition of |X|");
  }
  std::vector<std::vector<Element>> parts(mu.count());
  return detail::assign_with_sizes(x, h, x.elements(), parts, mu.parts());
}

/// Like brute_mu_partition_exists, but returns the partition it found.
[[nodiscard]] inline std::optional<std::vector<std::vector<Element>>>
brute_mu_partition_find(const GroundSet& x, int h, const PartitionMu& mu,
                        std::size_t cap = kDefaultBruteCap) {
  detail::check_size(x, cap, "brute mu-partition search");
  if (mu.sum() != static_cast<std::int64_t>(x.size())) {
    throw UsageError("mu is not a partition of |X|");
  }
  std::vector<std::vector<Element>> parts(mu.count());
  // Re-run the solver but keep the successful assignment.
  auto rec = [&](auto&& self, std::span<const Element> todo) -> bool {
    if (todo.empty()) return true;
    const Element e = todo.front();
    const auto rest = todo.subspan(1);
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (static_cast<std::int64_t>(parts[j].size()) >= mu[j]) continue;
      if (parts[j].empty() && j > 0 && parts[j - 1].empty() && mu[j] == mu[j - 1]) {
        continue;
      }
      parts[j].push_back(e);
      if (is_bh_naive(GroundSet(x.group(), parts[j]), h) && self(self, rest)) {
        return true;
      }
      parts[j].pop_back();
    }
    return false;
  };
  if (!rec(rec, x.elements())) return std::nullopt;
  return parts;
}

}  // namespace sidon::oracle
