#include "relay_rates/errors.hpp"

namespace relay {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Argument: return "ArgumentError";
    case ErrorKind::Name: return "NameError";
    case ErrorKind::Normalization: return "NormalizationError";
    case ErrorKind::Size: return "SizeError";
    case ErrorKind::Factorization: return "FactorizationError";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::DegenerateChannel: return "DegenerateChannelError";
    case ErrorKind::EmptyRegion: return "EmptyRegion";
    case ErrorKind::Convergence: return "ConvergenceError";
    case ErrorKind::Geometry: return "GeometryError";
    case ErrorKind::Parse: return "ParseError";
  }
  return "Error";
}

}  // namespace relay
