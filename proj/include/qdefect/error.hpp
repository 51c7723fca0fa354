#pragma once

#include <stdexcept>
#include <string>

namespace qdefect {

enum class ErrorKind {
  InvalidArgument,
  NotUnitary,
  BadDirection,
  NotAnEigenvalue,
  OutOfDomain,
  ScanExhausted,
  EigenSolverFailure,
  ContinuationLost,
  DegeneratePath,
  InconsistentShift,
};

const char* to_string(ErrorKind kind);

/// Exception thrown by every module; `kind()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qdefect
