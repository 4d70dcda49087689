#include "relay_rates/fading_twrc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "relay_rates/errors.hpp"
#include "relay_rates/numerics.hpp"

namespace relay {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLn2 = std::log(2.0);

// Root brackets start here and may grow up to kBracketLimit.
constexpr double kBracketLo = 1e-6;
constexpr double kBracketHi = 1e4;
constexpr double kBracketLimit = 1e8;

void require_rate(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("exponential rate must be positive");
}

// E[ln(1 + U + V)] for distinct finite rates close to each other, expanded
// around lambda = u with delta = v - u.
double log_sum_near_equal(double lambda, double delta) {
  const double g = scaled_expint_e1(lambda);
  const double inv = 1.0 / lambda;
  const double g1 = g - inv;
  const double g2 = g1 + inv * inv;
  const double g3 = g2 - 2.0 * inv * inv * inv;
  return g - lambda * g1 - lambda * g2 * delta / 2.0 -
         lambda * g3 * delta * delta / 6.0;
}

double bits(double nats) { return nats / kLn2; }

// log2(1 + 1/s) without cancellation for large s.
double compression_penalty(double sigma2) {
  return std::log1p(1.0 / sigma2) / kLn2;
}

double two_to_minus_one_inverse(double rate_bits) {
  if (!(rate_bits > 0.0)) return kInf;
  return 1.0 / std::expm1(rate_bits * kLn2);
}

}  // namespace

void FadingTwrcChannel::validate() const {
  for (double d : {d12, d1r, d2r}) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw DomainError("distances must be positive and finite");
    }
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw DomainError("pathloss exponent must be nonnegative");
  }
  if (!(power > 0.0) || !std::isfinite(power)) {
    throw DomainError("power must be positive and finite");
  }
  const FadingMoments& m = moments;
  for (double v : {m.h12, m.h21, m.h1r, m.h2r, m.hr1, m.hr2}) {
    // A zero moment is an absent link (its SNR is identically zero).
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DomainError("fading second moments must be nonnegative");
    }
  }
}

FadingTwrcChannel FadingTwrcChannel::swapped_users() const {
  FadingTwrcChannel s = *this;
  s.d1r = d2r;
  s.d2r = d1r;
  s.moments = {moments.h21, moments.h12, moments.h2r,
               moments.h1r, moments.hr2, moments.hr1};
  return s;
}

double ergodic_log_single(double lambda) {
  require_rate(lambda);
  if (std::isinf(lambda)) return 0.0;
  return bits(scaled_expint_e1(lambda));
}

double ergodic_log_sum(ExpRatePair p) {
  const double u = p.lambda_u;
  const double v = p.lambda_v;
  require_rate(u);
  require_rate(v);
  if (std::isinf(u)) return ergodic_log_single(v);
  if (std::isinf(v)) return ergodic_log_single(u);
  const double delta = v - u;
  if (std::abs(delta) <= 1e-5 * std::max(u, v)) {
    return bits(log_sum_near_equal(u, delta));
  }
  const double gu = scaled_expint_e1(u);
  const double gv = scaled_expint_e1(v);
  return bits((v * gu - u * gv) / delta);
}

double ergodic_log_single_quadrature(double lambda) {
  require_rate(lambda);
  if (std::isinf(lambda)) return 0.0;
  // Substitute gamma = t / lambda so the density is exp(-t).
  auto f = [&](double t) { return std::log1p(t / lambda) * std::exp(-t); };
  using boost::math::quadrature::gauss_kronrod;
  return bits(gauss_kronrod<double, 61>::integrate(f, 0.0, kInf, 20, 1e-14));
}

double ergodic_log_sum_quadrature(ExpRatePair p) {
  double u = p.lambda_u;
  double v = p.lambda_v;
  require_rate(u);
  require_rate(v);
  if (std::isinf(u)) return ergodic_log_single_quadrature(v);
  if (std::isinf(v)) return ergodic_log_single_quadrature(u);
  if (u > v) std::swap(u, v);
  // gamma = t / u; density of the sum in t, written with expm1 so nearly
  // equal rates do not cancel.
  const double ratio = v / u;
  auto density = [&](double t) {
    if (ratio == 1.0) return t * std::exp(-t);
    const double k = ratio - 1.0;
    return ratio / k * std::exp(-t) * -std::expm1(-k * t);
  };
  auto f = [&](double t) { return std::log1p(t / u) * density(t); };
  using boost::math::quadrature::gauss_kronrod;
  return bits(gauss_kronrod<double, 61>::integrate(f, 0.0, kInf, 20, 1e-14));
}

FadingLambdas fading_lambdas(const FadingTwrcChannel& ch, double sigma2) {
  if (!(sigma2 > 0.0)) throw DomainError("sigma2 must be positive");
  ch.validate();
  const double p = ch.power;
  const double a = ch.alpha;
  const FadingMoments& m = ch.moments;
  const double l12 = std::pow(ch.d12, a);
  const double l1r = std::pow(ch.d1r, a);
  const double l2r = std::pow(ch.d2r, a);
  FadingLambdas l;
  l.u1 = l12 / (m.h21 * p);
  l.u2 = l12 / (m.h12 * p);
  l.v1 = l1r * (1.0 + sigma2) / (m.hr1 * p);
  l.v2 = l2r * (1.0 + sigma2) / (m.hr2 * p);
  l.v3 = l2r / (m.h2r * p);
  l.v4 = l1r / (m.h1r * p);
  return l;
}

namespace {

template <class Sum, class Single>
FadingRateTuple assemble(const FadingTwrcChannel& ch, double sigma2, Sum sum,
                         Single single) {
  const FadingLambdas l = fading_lambdas(ch, sigma2);
  const double into2 = sum(ExpRatePair{l.u1, l.v3});
  const double into1 = sum(ExpRatePair{l.u2, l.v4});
  const double penalty = compression_penalty(sigma2);
  FadingRateTuple r;
  r.rbar11 = sum(ExpRatePair{l.u1, l.v1});
  r.rbar12 = into2 - penalty;
  r.rbar21 = sum(ExpRatePair{l.u2, l.v2});
  r.rbar22 = into1 - penalty;
  r.f1 = std::max(0.0, into2 - single(l.u1));
  r.f2 = std::max(0.0, into1 - single(l.u2));
  r.d1 = into2;
  return r;
}

}  // namespace

FadingRateTuple fading_rate_tuple(const FadingTwrcChannel& ch, double sigma2) {
  return assemble(ch, sigma2, ergodic_log_sum, ergodic_log_single);
}

FadingRateTuple fading_rate_tuple_quadrature(const FadingTwrcChannel& ch,
                                             double sigma2) {
  return assemble(ch, sigma2, ergodic_log_sum_quadrature,
                  ergodic_log_single_quadrature);
}

MonteCarloRates fading_rate_tuple_monte_carlo(const FadingTwrcChannel& ch,
                                              double sigma2,
                                              std::size_t samples,
                                              std::uint64_t seed) {
  if (samples < 2) throw ArgumentError("Monte Carlo needs at least 2 samples");
  const FadingLambdas l = fading_lambdas(ch, sigma2);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  // |h|^2 of a CN(0,1) coefficient scaled to mean 1/lambda.
  auto draw = [&](double lambda) {
    const double re = normal(rng);
    const double im = normal(rng);
    return (re * re + im * im) / lambda;
  };

  constexpr int kTerms = 6;
  double mean[kTerms] = {};
  double m2[kTerms] = {};
  for (std::size_t n = 1; n <= samples; ++n) {
    const double u1 = draw(l.u1), u2 = draw(l.u2);
    const double v1 = draw(l.v1), v2 = draw(l.v2);
    const double v3 = draw(l.v3), v4 = draw(l.v4);
    const double x[kTerms] = {std::log2(1.0 + u1 + v1),
                              std::log2(1.0 + u1 + v3),
                              std::log2(1.0 + u2 + v2),
                              std::log2(1.0 + u2 + v4),
                              std::log2(1.0 + v3 / (1.0 + u1)),
                              std::log2(1.0 + v4 / (1.0 + u2))};
    for (int k = 0; k < kTerms; ++k) {
      const double d = x[k] - mean[k];
      mean[k] += d / double(n);
      m2[k] += d * (x[k] - mean[k]);
    }
  }
  double se[kTerms];
  for (int k = 0; k < kTerms; ++k) {
    se[k] = std::sqrt(m2[k] / double(samples - 1) / double(samples));
  }
  const double penalty = compression_penalty(sigma2);
  MonteCarloRates out;
  out.samples = samples;
  out.mean = {mean[0], mean[1] - penalty, mean[2], mean[3] - penalty,
              mean[4], mean[5], mean[1]};
  out.standard_error = {se[0], se[1], se[2], se[3], se[4], se[5], se[1]};
  return out;
}

double fading_sum_rate(const FadingTwrcChannel& ch, double sigma2) {
  const FadingRateTuple r = fading_rate_tuple(ch, sigma2);
  return std::max(0.0, std::min(r.rbar11, r.rbar12)) +
         std::max(0.0, std::min(r.rbar21, r.rbar22));
}

namespace {

double intersection(const FadingTwrcChannel& ch, bool first_user) {
  auto gap = [&](double s) {
    const FadingRateTuple r = fading_rate_tuple(ch, s);
    return first_user ? r.rbar11 - r.rbar12 : r.rbar21 - r.rbar22;
  };
  return find_root_expanding(gap, kBracketLo, kBracketHi, kBracketLimit,
                             first_user ? "rate crossing for user 1"
                                        : "rate crossing for user 2");
}

// Derivative of rbar12 + rbar21 with respect to log(sigma2). The penalty
// part is exact; rbar21 is differenced numerically.
double sum_slope(const FadingTwrcChannel& ch, double sigma2) {
  constexpr double h = 1e-4;
  auto r21 = [&](double t) {
    const FadingLambdas l = fading_lambdas(ch, std::exp(t));
    return ergodic_log_sum({l.u2, l.v2});
  };
  const double t = std::log(sigma2);
  const double slope21 = (r21(t + h) - r21(t - h)) / (2.0 * h);
  return 1.0 / (kLn2 * (1.0 + sigma2)) + slope21;
}

double stationary_point(const FadingTwrcChannel& ch) {
  auto f = [&](double s) { return sum_slope(ch, s); };
  if (f(kBracketLo) <= 0.0) return kBracketLo;
  double hi = kBracketHi;
  while (f(hi) > 0.0) {
    if (hi >= kBracketLimit) return kInf;
    hi = std::min(hi * 10.0, kBracketLimit);
  }
  return find_root_expanding(f, kBracketLo, hi, hi, "sum-rate stationary point");
}

double zero_crossing_into(const FadingTwrcChannel& ch, bool into_user2) {
  const FadingLambdas l = fading_lambdas(ch, 1.0);
  return two_to_minus_one_inverse(
      into_user2 ? ergodic_log_sum({l.u1, l.v3}) : ergodic_log_sum({l.u2, l.v4}));
}

}  // namespace

FadingThresholds fading_thresholds(const FadingTwrcChannel& ch) {
  ch.validate();
  const FadingRateTuple at1 = fading_rate_tuple(ch, 1.0);
  FadingThresholds t;
  t.c1bar = two_to_minus_one_inverse(at1.f1);
  t.c2bar = two_to_minus_one_inverse(at1.f2);
  t.z1bar = zero_crossing_into(ch, true);
  t.e1bar = intersection(ch, true);
  t.e2bar = intersection(ch, false);

  const bool swap = t.e1bar < t.e2bar;
  const FadingTwrcChannel c = swap ? ch.swapped_users() : ch;
  SumRateBranchInput in;
  in.e1 = swap ? t.e2bar : t.e1bar;
  in.e2 = swap ? t.e1bar : t.e2bar;
  in.z1 = zero_crossing_into(c, true);
  in.g = stationary_point(c);
  in.r12 = [&](double s) { return fading_rate_tuple(c, s).rbar12; };
  in.r21 = [&](double s) { return fading_rate_tuple(c, s).rbar21; };
  t.gbar = in.g;
  t.nbar = sum_rate_optimal_sigma(in);
  return t;
}

RegionBoundary fading_region(const FadingTwrcChannel& ch, Scheme scheme,
                             const GridSpec& spec) {
  if (scheme == Scheme::CfOriginal) {
    throw ArgumentError("the binning scheme is not defined for fading");
  }
  const FadingThresholds t = fading_thresholds(ch);
  const double lower =
      scheme == Scheme::Nnc ? 0.0 : std::max(t.c1bar, t.c2bar);
  const double smallest = std::min({t.c1bar, t.c2bar, t.e1bar, t.e2bar});
  const double lo = spec.lo.value_or(std::min(0.5e-4, 0.5 * smallest));
  const double hi = spec.hi.value_or(
      10.0 * std::max({t.e1bar, t.e2bar, std::isfinite(lower) ? lower : 0.0}));
  const double extra[] = {t.c1bar, t.c2bar, t.z1bar, t.e1bar,
                          t.e2bar, t.gbar,  t.nbar};
  const std::vector<double> grid = sigma_grid(lo, hi, spec.points, extra);
  return sweep_region(
      [&](double s) {
        const FadingRateTuple r = fading_rate_tuple(ch, s);
        return RegionPoint{s, std::max(0.0, std::min(r.rbar11, r.rbar12)),
                           std::max(0.0, std::min(r.rbar21, r.rbar22))};
      },
      grid, lower, to_string(scheme));
}

bool fading_same_region(const FadingThresholds& t) {
  return std::max(t.c1bar, t.c2bar) <= std::min(t.e1bar, t.e2bar);
}

bool fading_same_sumrate(const FadingThresholds& t) {
  return std::max(t.c1bar, t.c2bar) <= t.nbar * (1.0 + 1e-9);
}

bool fading_check_same_region(const FadingTwrcChannel& ch) {
  return fading_same_region(fading_thresholds(ch));
}

SumRateOptimum fading_optimal_sigma_nnc(const FadingTwrcChannel& ch) {
  const double s = fading_thresholds(ch).nbar;
  return {s, fading_sum_rate(ch, s)};
}

bool fading_check_same_sumrate(const FadingTwrcChannel& ch) {
  return fading_same_sumrate(fading_thresholds(ch));
}

SumRateOptimum fading_sumrate_cf_nobinning(const FadingTwrcChannel& ch) {
  const FadingThresholds t = fading_thresholds(ch);
  const double lo = std::max(t.c1bar, t.c2bar);
  if (!std::isfinite(lo)) {
    throw DegenerateChannelError("relay links carry no information");
  }
  const double hi = 2.0 * std::max({lo, t.e1bar, t.e2bar});
  const double breaks[] = {t.e1bar, t.e2bar, t.z1bar,
                           zero_crossing_into(ch, false), t.gbar};
  const Maximum m = maximize_piecewise(
      [&](double s) { return fading_sum_rate(ch, s); }, lo, hi, breaks);
  return {m.x, m.value};
}

}  // namespace relay
