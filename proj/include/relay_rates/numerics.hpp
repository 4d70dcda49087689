#pragma once

#include <functional>
#include <span>

namespace relay {

/// e^x * E1(x) for x > 0, where E1(x) = int_x^inf e^-t / t dt. Scaled so it
/// stays finite for large x (it behaves like 1/x there).
double scaled_expint_e1(double x);

/// Bracketing root search for a function with a sign change on [lo, hi].
/// The upper end is pushed out geometrically (x10) until `hi_limit` when no
/// sign change is found; throws ConvergenceError carrying the last bracket.
double find_root_expanding(const std::function<double(double)>& f, double lo,
                           double hi, double hi_limit, const char* what);

struct Maximum {
  double x = 0.0;
  double value = 0.0;
};

/// Maximizes a continuous function on [lo, hi] that is unimodal between
/// consecutive breakpoints. Each segment is searched by Brent's method in
/// log(x), and segment ends are evaluated directly, so kinks at the
/// breakpoints are handled. Requires 0 < lo <= hi.
Maximum maximize_piecewise(const std::function<double(double)>& f, double lo,
                           double hi, std::span<const double> breakpoints);

}  // namespace relay
