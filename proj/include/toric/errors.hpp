#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace toric {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotAConfiguration : public Error {
public:
  using Error::Error;
};

class OverflowDetected : public Error {
public:
  OverflowDetected() : Error("integer overflow in exact arithmetic") {}
  using Error::Error;
};

class FiberTooLarge : public Error {
public:
  explicit FiberTooLarge(std::size_t cap)
      : Error("fiber exceeds cap of " + std::to_string(cap) + " elements"), cap(cap) {}
  std::size_t cap;
};

// Thrown when a completion or search exceeds its configured limit.
// best_bound carries the largest certified value seen before the breach (0 if none).
class ResourceBudgetExceeded : public Error {
public:
  ResourceBudgetExceeded(const std::string& what, std::int64_t best_bound = 0)
      : Error(what), best_bound(best_bound) {}
  std::int64_t best_bound;
};

class SliceNotInFiber : public Error {
public:
  using Error::Error;
};

class SliceNotIndispensable : public Error {
public:
  using Error::Error;
};

class PreconditionViolated : public Error {
public:
  using Error::Error;
};

class NotSameFiber : public Error {
public:
  using Error::Error;
};

class InternalInvariantViolation : public Error {
public:
  using Error::Error;
};

class ConstructionInconsistent : public Error {
public:
  using Error::Error;
};

class InvalidInput : public Error {
public:
  using Error::Error;
};

}  // namespace toric
