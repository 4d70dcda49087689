#include "relay_rates/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "relay_rates/errors.hpp"

namespace relay {

double scaled_expint_e1(double x) {
  if (!(x > 0.0)) throw DomainError("E1 needs a positive argument");
  if (std::isinf(x)) return 0.0;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  if (x < 1.0) {
    // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
    constexpr double kEulerGamma = 0.57721566490153286061;
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 200; ++k) {
      term *= -x / k;
      const double add = term / k;
      sum += add;
      if (std::abs(add) < std::abs(sum) * kEps) break;
    }
    return std::exp(x) * (-kEulerGamma - std::log(x) - sum);
  }
  // Continued fraction for e^x E1(x), modified Lentz.
  constexpr double kTiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -double(i) * double(i);
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

double find_root_expanding(const std::function<double(double)>& f, double lo,
                           double hi, double hi_limit, const char* what) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  while (std::signbit(f_lo) == std::signbit(f_hi) && f_hi != 0.0 &&
         hi < hi_limit) {
    lo = hi;
    f_lo = f_hi;
    hi = std::min(hi * 10.0, hi_limit);
    f_hi = f(hi);
  }
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw ConvergenceError(std::string(what) + ": root not bracketed", lo, hi,
                           f_lo, f_hi);
  }
  // Search in log-space; the functions here vary over many decades.
  auto g = [&](double t) { return f(std::exp(t)); };
  std::uintmax_t iters = 200;
  boost::math::tools::eps_tolerance<double> tol(50);
  const auto [a, b] = boost::math::tools::toms748_solve(
      g, std::log(lo), std::log(hi), f_lo, f_hi, tol, iters);
  return std::exp(0.5 * (a + b));
}

Maximum maximize_piecewise(const std::function<double(double)>& f, double lo,
                           double hi, std::span<const double> breakpoints) {
  if (!(lo > 0.0) || !(hi >= lo)) {
    throw ArgumentError("maximize_piecewise needs 0 < lo <= hi");
  }
  std::vector<double> knots{lo, hi};
  for (double b : breakpoints) {
    if (std::isfinite(b) && b > lo && b < hi) knots.push_back(b);
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  Maximum best{lo, f(lo)};
  auto consider = [&](double x, double v) {
    if (v > best.value) best = {x, v};
  };
  for (double k : knots) consider(k, f(k));

  auto neg = [&](double t) { return -f(std::exp(t)); };
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = std::log(knots[i]);
    const double b = std::log(knots[i + 1]);
    if (!(b > a)) continue;
    std::uintmax_t iters = 500;
    const auto [t, v] =
        boost::math::tools::brent_find_minima(neg, a, b, 52, iters);
    consider(std::exp(t), -v);
  }
  return best;
}

}  // namespace relay
