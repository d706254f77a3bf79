#pragma once

#include <stdexcept>
#include <string>

namespace cliquesdp {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// linalg
struct InvalidMatrix : Error {
  using Error::Error;
};
struct NotPositiveDefinite : Error {
  using Error::Error;
};

// model / parsing
struct ParseError : Error {
  int line;
  ParseError(int line_, const std::string& msg)
      : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};
struct DimensionError : Error {
  using Error::Error;
};

// convert
struct CoverageError : Error {
  using Error::Error;
};
struct NotCompletable : Error {
  using Error::Error;
};
struct OverlapMismatch : Error {
  using Error::Error;
};

// degeneracy
struct InfeasibleInput : Error {
  using Error::Error;
};
struct AssumptionViolated : Error {
  using Error::Error;
};
struct HypothesisFailed : Error {
  using Error::Error;
};

// ipm
struct InsufficientData : Error {
  using Error::Error;
};

}  // namespace cliquesdp
