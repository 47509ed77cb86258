#pragma once

#include <stdexcept>
#include <string>

namespace factorforge {

/// Partition does not cover the vertex set exactly once, or has an empty part.
class InvalidPartition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Some vertex demands more edges than it has (f(v) > d_G(v)).
class InfeasibleDemand : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A colored graph handed to the circuit machinery is not a union of
/// alternating circuits.
class NotAlternating : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The colored graph is not a switch on the given subgraph.
class InvalidSwitch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented pre- or postcondition failed.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Brute-force enumeration refused: the instance is above the size guard.
class SizeGuardExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

[[noreturn]] inline void contract_failure(const char* expr, const char* file, int line,
                                          const std::string& msg) {
  throw ContractViolation(std::string(file) + ":" + std::to_string(line) + ": " + expr +
                          (msg.empty() ? "" : " (" + msg + ")"));
}

}  // namespace detail
}  // namespace factorforge

// Always-on check; failures raise ContractViolation.
#define FF_ENSURE(cond, msg)                                                    \
  do {                                                                          \
    if (!(cond)) ::factorforge::detail::contract_failure(#cond, __FILE__, __LINE__, (msg)); \
  } while (false)
