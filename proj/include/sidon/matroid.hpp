#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "sidon/bh.hpp"
#include "sidon/errors.hpp"
#include "sidon/group.hpp"
#include "sidon/multisets.hpp"
#include "sidon/partition.hpp"

namespace sidon {

/// Thrown when a ground set fails the B_{2h-1,h-1} membership check at
/// matroid construction; carries the violating pair.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, BhkWitness witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}

  [[nodiscard]] const BhkWitness& witness() const { return witness_; }

 private:
  BhkWitness witness_;
};

/// Reason a mu-covering cannot exist.
struct MuObstruction {
  enum class Kind { TooFewParts, PrefixExceedsRank };
  Kind kind;
  // TooFewParts: r < covering number.
  std::size_t part_count = 0;
  std::size_t covering_number = 0;
  // PrefixExceedsRank: mu_1 + ... + mu_j > rho_j.
  std::size_t j = 0;
  std::int64_t prefix_sum = 0;
  std::int64_t rho_j = 0;

  [[nodiscard]] std::string to_string() const {
    if (kind == Kind::TooFewParts) {
      return "partition has " + std::to_string(part_count) +
             " parts but the covering number is " + std::to_string(covering_number);
    }
    return "mu_1 + ... + mu_" + std::to_string(j) + " = " +
           std::to_string(prefix_sum) + " exceeds rho_" + std::to_string(j) +
           " = " + std::to_string(rho_j);
  }
};

using MuCoveringResult =
    std::variant<std::vector<std::vector<Element>>, MuObstruction>;

namespace detail {

/// Edmonds-style partition of elements into parts independent in per-part
/// matroids, grown one element at a time along shortest exchange paths.
///
/// An oracle answers whether a sorted candidate part is independent in the
/// matroid of its copy.  Augmentation succeeds iff the covered set plus the
/// new element is partitionable, so a single pass over the elements yields a
/// maximum partitionable subset.
class MatroidPartitioner {
 public:
  using IndepOracle = std::function<bool(std::span<const Element>)>;

  explicit MatroidPartitioner(std::vector<IndepOracle> oracles)
      : oracles_(std::move(oracles)), parts_(oracles_.size()) {}

  [[nodiscard]] const std::vector<std::vector<Element>>& parts() const {
    return parts_;
  }

  [[nodiscard]] std::size_t covered() const {
    std::size_t total = 0;
    for (const auto& part : parts_) total += part.size();
    return total;
  }

  void add_part(IndepOracle oracle) {
    oracles_.push_back(std::move(oracle));
    parts_.emplace_back();
  }

  /// Tries to absorb x, shuffling elements between parts along a shortest
  /// exchange path.  Returns false when the covered set plus x is not
  /// partitionable; the parts are left unchanged in that case.
  bool augment(Element x) {
    std::map<Element, std::pair<Element, std::size_t>> parent;  // elem -> (pred, part)
    std::set<Element> visited{x};
    std::deque<Element> queue{x};

    while (!queue.empty()) {
      const Element y = queue.front();
      queue.pop_front();
      for (std::size_t j = 0; j < parts_.size(); ++j) {
        const auto& part = parts_[j];
        if (std::binary_search(part.begin(), part.end(), y)) continue;
        if (oracles_[j](with_insert(part, y))) {
          apply_path(y, j, parent);
          return true;
        }
        for (const Element z : part) {
          if (visited.contains(z)) continue;
          if (oracles_[j](with_swap(part, z, y))) {
            visited.insert(z);
            parent[z] = {y, j};
            queue.push_back(z);
          }
        }
      }
    }
    return false;
  }

 private:
  static std::vector<Element> with_insert(const std::vector<Element>& part,
                                          Element y) {
    std::vector<Element> out = part;
    out.insert(std::upper_bound(out.begin(), out.end(), y), y);
    return out;
  }

  static std::vector<Element> with_swap(const std::vector<Element>& part,
                                        Element remove, Element insert) {
    std::vector<Element> out;
    out.reserve(part.size());
    for (const Element e : part)
      if (e != remove) out.push_back(e);
    out.insert(std::upper_bound(out.begin(), out.end(), insert), insert);
    return out;
  }

  void apply_path(Element tail, std::size_t free_part,
                  const std::map<Element, std::pair<Element, std::size_t>>& parent) {
    insert_into(free_part, tail);
    Element cur = tail;
    while (auto it = parent.find(cur); it != parent.end()) {
      const auto [pred, part] = it->second;
      erase_from(part, cur);
      insert_into(part, pred);
      cur = pred;
    }
  }

  void insert_into(std::size_t j, Element e) {
    auto& part = parts_[j];
    part.insert(std::upper_bound(part.begin(), part.end(), e), e);
  }

  void erase_from(std::size_t j, Element e) {
    auto& part = parts_[j];
    part.erase(std::find(part.begin(), part.end(), e));
  }

  std::vector<IndepOracle> oracles_;
  std::vector<std::vector<Element>> parts_;
};

}  // namespace detail

/// The matroid on a B_{2h-1,h-1} ground set X whose independent sets are the
/// B_h-subsets of X.  Immutable after construction; every query is pure.
///
/// Constructed unvalidated, the object only answers plain independence
/// queries: outside B_{2h-1,h-1} maximal B_h-subsets of different sizes can
/// coexist, so greedy rank, union rank and covering queries would silently
/// return wrong answers and are refused.
class SidonMatroid {
 public:
  [[nodiscard]] static SidonMatroid validated(GroundSet ground, int order,
                                              std::uint64_t cap = kDefaultMultisetCap) {
    check_order(order);
    auto membership = is_bhk(ground, 2 * order - 1, order - 1, cap);
    if (!membership.member) {
      throw ValidationError(
          "ground set is not a B_{" + std::to_string(2 * order - 1) + "," +
              std::to_string(order - 1) + "} set; witness: " +
              membership.witness->violation.equation(),
          std::move(*membership.witness));
    }
    return SidonMatroid(std::move(ground), order, true, cap);
  }

  [[nodiscard]] static SidonMatroid unvalidated(GroundSet ground, int order,
                                                std::uint64_t cap = kDefaultMultisetCap) {
    check_order(order);
    return SidonMatroid(std::move(ground), order, false, cap);
  }

  [[nodiscard]] const GroundSet& ground() const { return ground_; }
  [[nodiscard]] int order() const { return order_; }
  [[nodiscard]] bool is_validated() const { return validated_; }

  /// Independence: S is a B_h-subset of the ground set.
  [[nodiscard]] bool is_independent(std::span<const Element> subset) const {
    return is_bh_quick(subset_of_ground(subset), order_, cap_);
  }

  /// Greedy maximal independent subset of `within`, grown in ascending
  /// element order.  On a validated ground set its size is the size of every
  /// maximal independent subset of `within`.
  [[nodiscard]] std::vector<Element> find_basis(
      std::optional<std::span<const Element>> within = std::nullopt) const {
    require_validated("find_basis");
    const GroundSet scope = scope_of(within);
    std::vector<Element> basis;
    for (const Element e : scope.elements()) {
      basis.push_back(e);
      if (!is_bh_quick(GroundSet(ground_.group(), basis), order_, cap_)) {
        basis.pop_back();
      }
    }
    return basis;
  }

  [[nodiscard]] std::int64_t rank(
      std::optional<std::span<const Element>> within = std::nullopt) const {
    return static_cast<std::int64_t>(find_basis(within).size());
  }

  /// The unique proper double representation of length at most 2h-1 with
  /// elements in A + {x}, for a maximal independent A and x outside A.  Its
  /// length is exactly h and it carries x with multiplicity u >= 1 on the
  /// left.  Finding zero or several is reported as an integrity error: the
  /// ground set is not actually B_{2h-1,h-1} or A is not maximal independent.
  [[nodiscard]] DoubleRepresentation unique_proper_representation(
      std::span<const Element> a, Element x) const {
    require_validated("unique_proper_representation");
    const GroundSet base = subset_of_ground(a);
    const Element cx = ground_.group().canonicalize(x);
    if (!ground_.contains(cx)) {
      throw UsageError("x is not an element of the ground set");
    }
    if (base.contains(cx)) throw UsageError("x already belongs to A");
    if (!is_bh_quick(base, order_, cap_)) {
      throw UsageError("A is not independent");
    }

    const GroundSet extended = base.with_element(cx);
    const auto reps =
        find_proper_double_representations(extended, 2 * order_ - 1, cap_);
    if (reps.size() != 1) {
      throw IntegrityError(
          "expected exactly one proper double representation in A + {" +
          std::to_string(cx) + "}, found " + std::to_string(reps.size()) +
          " (A not maximal, or ground set not B_{2h-1,h-1})");
    }
    const DoubleRepresentation& rep = reps.front();
    if (rep.length() != static_cast<std::size_t>(order_)) {
      throw IntegrityError("unique proper double representation has length " +
                           std::to_string(rep.length()) + ", expected " +
                           std::to_string(order_));
    }
    auto tagged = DoubleRepresentation::with_distinguished(
        ground_.group(), rep.left(), rep.right(), cx);
    if (tagged.external_multiplicity() < 1) {
      throw IntegrityError("unique proper double representation avoids x");
    }
    return tagged;
  }

  /// All elements a* of the unique proper double representation other than x.
  /// Swapping any of them for x preserves independence: (A + {x}) - {a*} is
  /// checked to be independent before returning.
  [[nodiscard]] std::vector<Element> exchange_set(std::span<const Element> a,
                                                  Element x) const {
    const DoubleRepresentation rep = unique_proper_representation(a, x);
    const Element cx = ground_.group().canonicalize(x);
    std::set<Element> candidates;
    for (const Element e : rep.left().entries())
      if (e != cx) candidates.insert(e);
    for (const Element e : rep.right().entries())
      if (e != cx) candidates.insert(e);

    std::vector<Element> swapped(a.begin(), a.end());
    swapped.push_back(cx);
    for (const Element star : candidates) {
      std::vector<Element> trial;
      for (const Element e : swapped)
        if (e != star) trial.push_back(e);
      if (!is_bh_quick(GroundSet(ground_.group(), trial), order_, cap_)) {
        throw IntegrityError("exchange candidate " + std::to_string(star) +
                             " does not preserve independence");
      }
    }
    return {candidates.begin(), candidates.end()};
  }

  /// rho_k: the size of the largest subset of `within` expressible as a union
  /// of k independent sets, by matroid-union augmentation.
  [[nodiscard]] std::int64_t union_rank(
      int k, std::optional<std::span<const Element>> within = std::nullopt) const {
    require_validated("union_rank");
    if (k < 1) throw UsageError("union rank requires k >= 1");
    const GroundSet scope = scope_of(within);
    detail::MatroidPartitioner runner(
        std::vector<detail::MatroidPartitioner::IndepOracle>(
            static_cast<std::size_t>(k), plain_oracle()));
    for (const Element e : scope.elements()) runner.augment(e);
    return static_cast<std::int64_t>(runner.covered());
  }

  /// Smallest k such that `within` is a union of k independent sets; 0 for
  /// the empty set by convention.  At most |within| since singletons are
  /// independent.
  [[nodiscard]] std::int64_t covering_number(
      std::optional<std::span<const Element>> within = std::nullopt) const {
    require_validated("covering_number");
    const GroundSet scope = scope_of(within);
    if (scope.empty()) return 0;
    return static_cast<std::int64_t>(incremental_profile(scope).size());
  }

  /// The sequence rho_1 < ... < rho_k = |X| ending at the covering number.
  [[nodiscard]] RankProfile rank_profile() const {
    require_validated("rank_profile");
    if (ground_.empty()) return RankProfile({});
    return RankProfile(incremental_profile(ground_));
  }

  /// n_X(k): the common cardinality of maximal subsets of X with covering
  /// number exactly k; equals rho_k.
  [[nodiscard]] std::int64_t max_set_with_covering_number(int k) const {
    require_validated("max_set_with_covering_number");
    const std::int64_t cover = covering_number();
    if (k < 1 || k > cover) {
      throw UsageError("k must lie in 1.." + std::to_string(cover));
    }
    return union_rank(k);
  }

  /// The covering criterion for a partition mu of |X|: a mu-covering exists
  /// iff mu has at least covering-number many parts and every prefix sum
  /// mu_1 + ... + mu_j is at most rho_j, for j up to the covering number.
  [[nodiscard]] bool mu_covering_exists(const PartitionMu& mu) const {
    return !mu_obstruction(mu).has_value();
  }

  /// Builds a mu-covering when the criterion holds: pairwise disjoint
  /// independent sets covering X with sizes exactly mu_1 >= ... >= mu_r.
  /// Realized as a matroid partition against r copies of the matroid, the
  /// j-th truncated at rank mu_j; part sizes are then forced.  Failure to
  /// absorb every element despite the criterion would contradict the covering
  /// theorem and raises an integrity error.
  [[nodiscard]] MuCoveringResult construct_mu_covering(const PartitionMu& mu) const {
    if (auto obstruction = mu_obstruction(mu)) return *obstruction;

    std::vector<detail::MatroidPartitioner::IndepOracle> oracles;
    oracles.reserve(mu.count());
    for (std::size_t j = 0; j < mu.count(); ++j) {
      const auto limit = static_cast<std::size_t>(mu[j]);
      oracles.push_back([this, limit](std::span<const Element> part) {
        return part.size() <= limit &&
               is_bh_quick(GroundSet(ground_.group(),
                                     std::vector<Element>(part.begin(), part.end())),
                           order_, cap_);
      });
    }
    detail::MatroidPartitioner runner(std::move(oracles));
    for (const Element e : ground_.elements()) {
      if (!runner.augment(e)) {
        throw IntegrityError(
            "mu-covering criterion holds but element " + std::to_string(e) +
            " cannot be absorbed; covering theorem violated");
      }
    }
    std::vector<std::vector<Element>> parts = runner.parts();
    verify_covering(parts, mu);
    return parts;
  }

  /// Definitional disjointification: keeps the first part, removes from each
  /// later part everything seen earlier.  The union is preserved and every
  /// part stays independent.
  [[nodiscard]] std::vector<std::vector<Element>> disjointify(
      const std::vector<std::vector<Element>>& parts) const {
    std::vector<std::vector<Element>> out;
    std::set<Element> seen;
    for (const auto& raw : parts) {
      const GroundSet part = subset_of_ground(raw);
      if (!is_bh_quick(part, order_, cap_)) {
        throw UsageError("disjointify requires independent parts");
      }
      std::vector<Element> kept;
      for (const Element e : part.elements()) {
        if (seen.insert(e).second) kept.push_back(e);
      }
      out.push_back(std::move(kept));
    }
    return out;
  }

 private:
  SidonMatroid(GroundSet ground, int order, bool validated, std::uint64_t cap)
      : ground_(std::move(ground)), order_(order), validated_(validated), cap_(cap) {}

  static void check_order(int order) {
    if (order < 2) throw UsageError("matroid order h must be >= 2");
  }

  void require_validated(const std::string& op) const {
    if (!validated_) {
      throw UsageError(op + " requires a validated B_{2h-1,h-1} ground set");
    }
  }

  /// Canonicalizes a subset argument and checks it lies inside the ground set.
  [[nodiscard]] GroundSet subset_of_ground(std::span<const Element> subset) const {
    GroundSet s(ground_.group(), std::vector<Element>(subset.begin(), subset.end()));
    if (!ground_.contains_all(s.elements())) {
      throw UsageError("argument is not a subset of the ground set");
    }
    return s;
  }

  [[nodiscard]] GroundSet scope_of(
      std::optional<std::span<const Element>> within) const {
    return within ? subset_of_ground(*within) : ground_;
  }

  [[nodiscard]] detail::MatroidPartitioner::IndepOracle plain_oracle() const {
    return [this](std::span<const Element> part) {
      return is_bh_quick(
          GroundSet(ground_.group(), std::vector<Element>(part.begin(), part.end())),
          order_, cap_);
    };
  }

  /// Grows the number of parts until everything is covered, recording the
  /// covered count per k.  A base of the k-fold union extends to a base of
  /// the (k+1)-fold union, so parts carry over between rounds.
  [[nodiscard]] std::vector<std::int64_t> incremental_profile(
      const GroundSet& scope) const {
    detail::MatroidPartitioner runner({});
    std::vector<Element> uncovered(scope.elements().begin(),
                                   scope.elements().end());
    std::vector<std::int64_t> rho;
    while (!uncovered.empty()) {
      runner.add_part(plain_oracle());
      std::vector<Element> rest;
      for (const Element e : uncovered) {
        if (!runner.augment(e)) rest.push_back(e);
      }
      uncovered = std::move(rest);
      rho.push_back(static_cast<std::int64_t>(runner.covered()));
    }
    return rho;
  }

  [[nodiscard]] std::optional<MuObstruction> mu_obstruction(
      const PartitionMu& mu) const {
    require_validated("mu_covering_exists");
    if (mu.sum() != static_cast<std::int64_t>(ground_.size())) {
      throw UsageError("mu is not a partition of |X| = " +
                       std::to_string(ground_.size()));
    }
    const RankProfile profile = rank_profile();
    const std::size_t cover = profile.covering_number();
    if (mu.count() < cover) {
      MuObstruction o;
      o.kind = MuObstruction::Kind::TooFewParts;
      o.part_count = mu.count();
      o.covering_number = cover;
      return o;
    }
    for (std::size_t j = 1; j <= cover; ++j) {
      const std::int64_t prefix = mu.prefix_sum(j);
      if (prefix > profile.at(j)) {
        MuObstruction o;
        o.kind = MuObstruction::Kind::PrefixExceedsRank;
        o.j = j;
        o.prefix_sum = prefix;
        o.rho_j = profile.at(j);
        return o;
      }
    }
    return std::nullopt;
  }

  void verify_covering(const std::vector<std::vector<Element>>& parts,
                       const PartitionMu& mu) const {
    std::set<Element> all;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (parts[j].size() != static_cast<std::size_t>(mu[j])) {
        throw IntegrityError("constructed part has size " +
                             std::to_string(parts[j].size()) + ", expected " +
                             std::to_string(mu[j]));
      }
      if (!is_bh_quick(GroundSet(ground_.group(), parts[j]), order_, cap_)) {
        throw IntegrityError("constructed part is not independent");
      }
      for (const Element e : parts[j]) {
        if (!all.insert(e).second) {
          throw IntegrityError("constructed parts are not pairwise disjoint");
        }
      }
    }
    if (all.size() != ground_.size()) {
      throw IntegrityError("constructed parts do not cover the ground set");
    }
  }

  GroundSet ground_;
  int order_;
  bool validated_;
  std::uint64_t cap_;
};

}  // namespace sidon
