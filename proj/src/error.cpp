#include "qdefect/error.hpp"

namespace qdefect {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::BadDirection: return "BadDirection";
    case ErrorKind::NotAnEigenvalue: return "NotAnEigenvalue";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::ScanExhausted: return "ScanExhausted";
    case ErrorKind::EigenSolverFailure: return "EigenSolverFailure";
    case ErrorKind::ContinuationLost: return "ContinuationLost";
    case ErrorKind::DegeneratePath: return "DegeneratePath";
    case ErrorKind::InconsistentShift: return "InconsistentShift";
  }
  return "Unknown";
}

}  // namespace qdefect
