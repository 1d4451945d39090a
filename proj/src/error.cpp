#include "plsem/error.hpp"

namespace plsem {

const char* error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::CyclicGraph: return "CyclicGraph";
    case ErrorKind::NoSuchEdge: return "NoSuchEdge";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InconsistentOrientation: return "InconsistentOrientation";
    case ErrorKind::InconsistentKnowledge: return "InconsistentKnowledge";
    case ErrorKind::UnknownAdjacency: return "UnknownAdjacency";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotRemovable: return "NotRemovable";
    case ErrorKind::NotCovered: return "NotCovered";
    case ErrorKind::NotLinear: return "NotLinear";
    case ErrorKind::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::SkeletonMismatch: return "SkeletonMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace plsem
