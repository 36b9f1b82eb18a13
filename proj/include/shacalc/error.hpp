#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shacalc {

enum class ErrorCode {
  // group_core
  NonBijective,
  OrderBound,
  BadIndex,
  ParentMismatch,
  NotNormal,
  // glattice
  GroupMismatch,
  NotSaturated,
  NotEquivariant,
  NotInjective,
  NotNested,
  DescentFailure,
  // cohomology
  BudgetExceeded,
  UnsupportedDegree,
  NotFixedModule,
  NotACocycle,
  // multinorm
  BadPartition,
  NotGaloisF,
  BadOverride,
  TheoremViolation,
  NotD4Shape,
  // arith
  NotOddPrime,
  NotQuarticDomain,
  EvenInput,
  BadBiquadratic,
  // cli
  ParseError,
  // everything that signals a bug rather than bad input
  Internal,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void check(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace shacalc
