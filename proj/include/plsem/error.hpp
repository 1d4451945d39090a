#pragma once

#include <stdexcept>
#include <string>

namespace plsem {

enum class ErrorKind {
  CyclicGraph,
  NoSuchEdge,
  DimensionMismatch,
  InconsistentOrientation,
  InconsistentKnowledge,
  UnknownAdjacency,
  CapExceeded,
  NotRemovable,
  NotCovered,
  NotLinear,
  ZeroCoefficient,
  DegenerateInput,
  SkeletonMismatch,
  InvalidArgument,
  ParseError,
  IoError,
};

// Stable name used in CLI diagnostics and the C interface.
const char* error_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace plsem
