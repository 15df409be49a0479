#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mbeam {

/// Failure categories raised by the library. The CLI maps these onto exit codes.
enum class ErrorKind {
  InvalidBoundary,
  SingularMapping,
  Domain,
  Configuration,
  SourceEvaluation,
  NewtonNoConvergence,
  SingularJacobian,
  Diverged,
  FitDomain,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mbeam
