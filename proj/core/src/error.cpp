#include "mbeam/error.hpp"

namespace mbeam {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidBoundary: return "invalid-boundary";
    case ErrorKind::SingularMapping: return "singular-mapping";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::SourceEvaluation: return "source-evaluation";
    case ErrorKind::NewtonNoConvergence: return "newton-no-convergence";
    case ErrorKind::SingularJacobian: return "singular-jacobian";
    case ErrorKind::Diverged: return "diverged";
    case ErrorKind::FitDomain: return "fit-domain";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace mbeam
