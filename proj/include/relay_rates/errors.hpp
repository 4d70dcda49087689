#pragma once

#include <stdexcept>
#include <string>

namespace relay {

enum class ErrorKind {
  Argument,
  Name,
  Normalization,
  Size,
  Factorization,
  Domain,
  DegenerateChannel,
  EmptyRegion,
  Convergence,
  Geometry,
  Parse,
};

const char* to_string(ErrorKind kind);

// Base of every error raised by the library. The C API maps `kind()` onto a
// status code, so every throw site picks one of the subclasses below.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define RELAY_DEFINE_ERROR(Name)                                  \
  class Name##Error : public Error {                              \
   public:                                                        \
    explicit Name##Error(const std::string& what)                 \
        : Error(ErrorKind::Name, what) {}                         \
  };

RELAY_DEFINE_ERROR(Argument)
RELAY_DEFINE_ERROR(Name)
RELAY_DEFINE_ERROR(Normalization)
RELAY_DEFINE_ERROR(Size)
RELAY_DEFINE_ERROR(Factorization)
RELAY_DEFINE_ERROR(Domain)
RELAY_DEFINE_ERROR(DegenerateChannel)
RELAY_DEFINE_ERROR(Geometry)
RELAY_DEFINE_ERROR(Parse)

#undef RELAY_DEFINE_ERROR

class EmptyRegion : public Error {
 public:
  explicit EmptyRegion(const std::string& what)
      : Error(ErrorKind::EmptyRegion, what) {}
};

// Raised when a bracketing root search cannot enclose a sign change. The
// bracket and the function values at its ends are kept for diagnostics.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double lo, double hi, double f_lo,
                   double f_hi)
      : Error(ErrorKind::Convergence, what),
        lo_(lo), hi_(hi), f_lo_(f_lo), f_hi_(f_hi) {}

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double f_lo() const noexcept { return f_lo_; }
  double f_hi() const noexcept { return f_hi_; }

 private:
  double lo_, hi_, f_lo_, f_hi_;
};

}  // namespace relay
