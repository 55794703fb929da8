#pragma once

#include <stdexcept>
#include <string>

namespace innerkit {

enum class ErrorKind {
  Evaluation,
  MissingReproducibility,
  InadmissibleMultiset,
  ToleranceUnreachable,
  DivergentSeries,
  UnboundedTail,
  SingularGram,
  IllConditioned,
  DegenerateResidueSystem,
  TruncationDominatesResidual,
  ZeroFunction,
  Unsupported,
  Config,
};

const char* to_string(ErrorKind kind);

// All library failures are reported through this type; kind() lets callers
// and the CLI distinguish numerical failures from bad input.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace innerkit
