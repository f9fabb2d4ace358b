#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crowdalloc {

// Out-of-domain argument (negative rate, x outside [0,1], empty list, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Caller violated an operation precondition on a state (sampling from a
// terminal state, assigning a worker to a capped task, ...).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Configuration the library deliberately does not handle (finite-horizon
// bound, stochastic policy in the exact evaluator).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Hire decision of the single-task relaxation did not switch monotonically
// in the multiplier, so no well-defined index exists at that state.
class DiagnosticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact DP refused because the joint state space is too large.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, double estimated_states)
      : std::runtime_error(what), estimated_states_(estimated_states) {}
  double estimated_states() const noexcept { return estimated_states_; }

 private:
  double estimated_states_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace crowdalloc
