#pragma once

#include <stdexcept>
#include <string>

namespace dualform {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// Raised when a pivot is numerically null under an indefinite metric.
struct IndefiniteSpanError : Error {
  using Error::Error;
};

struct NotOnSheetError : Error {
  using Error::Error;
};

struct OutOfDomainError : Error {
  using Error::Error;
};

struct NonSmoothJetError : Error {
  using Error::Error;
};

// Frozen Gram-Schmidt pivot order became invalid at a nearby evaluation
// point (finite-difference stencil crossed a frame chart boundary).
struct FrameDiscontinuityError : Error {
  using Error::Error;
};

struct EvalError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(std::string msg, int line_, int col_)
      : Error(std::move(msg) + " (line " + std::to_string(line_) + ", column " +
              std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
  int line;
  int col;
};

}  // namespace dualform
