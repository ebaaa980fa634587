#pragma once

#include <stdexcept>
#include <string>

namespace qcx {

// Bad user-supplied data: malformed map files, parameters out of range,
// degenerate grids.  The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A quadrature or solver ran out of budget before reaching its tolerance.
// Carries the best error estimate achieved so callers can report how close
// the run got.  The CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
public:
  NumericError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}
  double achieved_error() const { return achieved_error_; }

private:
  double achieved_error_;
};

// A structural invariant failed (nonpositive Jacobian from exact integrals,
// trace below 2 beyond rounding slack).  Indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace qcx
