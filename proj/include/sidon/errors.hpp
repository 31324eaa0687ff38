#pragma once

#include <stdexcept>
#include <string>

namespace sidon {

/// Violated precondition or malformed argument.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// Checked integer arithmetic left the representable range.
class OverflowError : public std::overflow_error {
 public:
  explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

/// An enumeration would exceed the configured materialization cap.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// A structural guarantee failed at runtime.  Reaching this means either a
/// precondition was silently violated upstream or an invariant the library
/// relies on does not hold for the given instance.  Never caught internally.
class IntegrityError : public std::logic_error {
 public:
  explicit IntegrityError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace sidon
