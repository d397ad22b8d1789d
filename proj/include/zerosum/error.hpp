#pragma once

#include <stdexcept>
#include <string>

namespace zerosum {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DivisibilityChainViolation : public Error {
public:
  using Error::Error;
};

class FactorTooSmall : public Error {
public:
  using Error::Error;
};

class GroupMismatch : public Error {
public:
  using Error::Error;
};

class GroupTooLarge : public Error {
public:
  using Error::Error;
};

class SequenceTooLong : public Error {
public:
  using Error::Error;
};

class ArityMismatch : public Error {
public:
  using Error::Error;
};

class InstanceTooLarge : public Error {
public:
  using Error::Error;
};

class NotAnAtom : public Error {
public:
  using Error::Error;
};

class MultiplicityNotDivisible : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

/// Raised when an internal mathematical invariant fails at runtime.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

/// A search ran out of its node budget or wall-clock allowance.
/// `best_partial` is the best value certified before stopping.
class BudgetExceeded : public Error {
public:
  BudgetExceeded(const std::string &what, long long best_partial)
      : Error(what), best_partial(best_partial) {}
  long long best_partial;
};

} // namespace zerosum
