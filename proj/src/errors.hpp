#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hypdist {

/// A failure in the mathematical domain of an operation: bad input, violated
/// precondition, or a search that ran out of budget. `name()` is the stable
/// error identifier surfaced through the C API and the CLI payload.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string name, const std::string& message)
      : std::runtime_error(message), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// An internal consistency check failed. Never expected on valid input.
class InvariantBreach : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

[[noreturn]] inline void fail(std::string name, const std::string& message) {
  throw DomainError(std::move(name), message);
}

inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw InvariantBreach(what);
}

}  // namespace hypdist

namespace hypdist {

/// Malformed request: unknown operation, missing or mistyped argument.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void usage(const std::string& message) { throw UsageError(message); }

}  // namespace hypdist
