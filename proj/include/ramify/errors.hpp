#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ramify {

// Exit-code classes used by the CLI:
//   InvalidInput / Refusal  -> 1
//   BudgetExceeded          -> 2
//   InvariantViolation      -> 3 (always a bug)
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
  using Error::Error;
};

class Refusal : public Error {
public:
  using Error::Error;
};

class BudgetExceeded : public Error {
public:
  BudgetExceeded(const std::string &what, std::uint64_t frontier)
      : Error(what), frontier_(frontier) {}

  /// Index of the first work item that was not processed.
  std::uint64_t frontier() const noexcept { return frontier_; }

private:
  std::uint64_t frontier_;
};

class InvariantViolation : public Error {
public:
  using Error::Error;
};

} // namespace ramify
