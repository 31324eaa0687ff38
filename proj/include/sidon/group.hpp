#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "sidon/errors.hpp"

namespace sidon {

/// Group element value.  Canonical form: any integer for the integers, the
/// residue in [0, n) for the cyclic group of order n.
using Element = std::int64_t;

namespace detail {

inline Element checked_add(Element a, Element b) {
  Element out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw OverflowError("integer addition overflow: " + std::to_string(a) +
                        " + " + std::to_string(b));
  }
  return out;
}

inline Element checked_mul(Element a, Element b) {
  Element out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError("integer multiplication overflow: " +
                        std::to_string(a) + " * " + std::to_string(b));
  }
  return out;
}

}  // namespace detail

enum class GroupKind { Integers, CyclicMod };

/// The ambient abelian group all sets live in: the integers Z, or the cyclic
/// group Z/nZ with n >= 2.  Immutable value type; all operations are pure.
class Group {
 public:
  [[nodiscard]] static Group integers() { return Group(GroupKind::Integers, 0); }

  [[nodiscard]] static Group cyclic(Element modulus) {
    if (modulus < 2) {
      throw UsageError("cyclic group modulus must be >= 2, got " +
                       std::to_string(modulus));
    }
    return Group(GroupKind::CyclicMod, modulus);
  }

  [[nodiscard]] GroupKind kind() const { return kind_; }
  [[nodiscard]] bool is_integers() const { return kind_ == GroupKind::Integers; }
  /// Modulus n for Z/nZ; 0 for the integers.
  [[nodiscard]] Element modulus() const { return modulus_; }

  [[nodiscard]] Element zero() const { return 0; }

  /// Reduce an arbitrary integer to canonical form.
  [[nodiscard]] Element canonicalize(Element v) const {
    if (kind_ == GroupKind::Integers) return v;
    Element r = v % modulus_;
    return r < 0 ? r + modulus_ : r;
  }

  [[nodiscard]] bool is_canonical(Element v) const {
    return kind_ == GroupKind::Integers || (v >= 0 && v < modulus_);
  }

  /// Group sum of two canonical elements.  Overflow in Z raises; the cyclic
  /// case reduces eagerly and cannot overflow for canonical inputs.
  [[nodiscard]] Element add(Element a, Element b) const {
    Element s = detail::checked_add(a, b);
    return canonicalize(s);
  }

  /// Group inverse of a canonical element.
  [[nodiscard]] Element negate(Element a) const {
    if (kind_ == GroupKind::Integers) {
      if (a == INT64_MIN) throw OverflowError("integer negation overflow");
      return -a;
    }
    return a == 0 ? 0 : modulus_ - a;
  }

  [[nodiscard]] Element subtract(Element a, Element b) const {
    return add(a, negate(b));
  }

  /// Fold of add over a list; the empty sum is the identity.
  [[nodiscard]] Element sum(std::span<const Element> elems) const {
    Element acc = 0;
    for (Element e : elems) acc = add(acc, e);
    return acc;
  }

  /// n-fold sum of a single element.
  [[nodiscard]] Element scale(Element count, Element a) const {
    if (count < 0) throw UsageError("scale count must be nonnegative");
    if (kind_ == GroupKind::CyclicMod) {
      return canonicalize(detail::checked_mul(count % modulus_, a));
    }
    return detail::checked_mul(count, a);
  }

  [[nodiscard]] bool operator==(const Group& other) const = default;

  /// "Z" or "Z/nZ"; used in reports and error messages.
  [[nodiscard]] std::string name() const {
    if (kind_ == GroupKind::Integers) return "Z";
    return "Z/" + std::to_string(modulus_) + "Z";
  }

 private:
  Group(GroupKind kind, Element modulus) : kind_(kind), modulus_(modulus) {}

  GroupKind kind_;
  Element modulus_;
};

}  // namespace sidon
