#pragma once

#include <stdexcept>
#include <string>

namespace dppmap {

// A pivot used as a divisor, or about to be committed, is too close to zero.
class SingularPivotError : public std::runtime_error {
 public:
  explicit SingularPivotError(const std::string& what)
      : std::runtime_error("numerically singular pivot: " + what) {}
};

// The kernel matrix as a whole is not numerically positive definite.
class SingularKernelError : public std::runtime_error {
 public:
  explicit SingularKernelError(const std::string& what)
      : std::runtime_error("kernel numerically singular: " + what) {}
};

// A caller broke an operation's precondition (stale row, bad k, ...).
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

class EmptyQueueError : public std::runtime_error {
 public:
  EmptyQueueError() : std::runtime_error("pop_max on a queue with no live entries") {}
};

// Malformed input files (bad magic, truncated payload, bad CSV line).
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dppmap
