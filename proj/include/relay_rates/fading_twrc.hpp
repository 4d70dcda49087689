#pragma once

#include <cstddef>
#include <cstdint>

#include "relay_rates/region.hpp"

namespace relay {

/// Second moments E|h|^2 of the Rayleigh coefficients, same index
/// convention as the Gaussian gains (h12: user 2 -> user 1).
struct FadingMoments {
  double h12 = 1.0;
  double h21 = 1.0;
  double h1r = 1.0;
  double h2r = 1.0;
  double hr1 = 1.0;
  double hr2 = 1.0;
};

/// Rayleigh-fading two-way relay channel with complex unit noise. Link
/// reciprocity of distances: d1r serves both 1->r and r->1.
struct FadingTwrcChannel {
  double d12 = 1.0;
  double d1r = 1.0;
  double d2r = 1.0;
  double alpha = 2.0;
  double power = 1.0;
  FadingMoments moments;

  /// DomainError unless distances and power are positive, moments are
  /// nonnegative and alpha >= 0.
  void validate() const;
  FadingTwrcChannel swapped_users() const;
};

/// Rates of two independent exponential SNRs (rate = 1 / mean). An infinite
/// rate stands for an SNR that is identically zero.
struct ExpRatePair {
  double lambda_u = 1.0;
  double lambda_v = 1.0;
};

/// E[log2(1 + U)] with U exponential of rate lambda.
double ergodic_log_single(double lambda);
/// E[log2(1 + U + V)] for independent exponentials.
double ergodic_log_sum(ExpRatePair p);

/// Reference evaluations by adaptive quadrature over the SNR density.
double ergodic_log_single_quadrature(double lambda);
double ergodic_log_sum_quadrature(ExpRatePair p);

/// Ergodic counterparts of the Gaussian rate tuple (log2(1+x) convention).
/// f1, f2 are the relay links' contributions beyond the direct link; d1 is
/// the total rate into user 2 without compression loss (zero of rbar12).
struct FadingRateTuple {
  double rbar11 = 0.0;
  double rbar12 = 0.0;
  double rbar21 = 0.0;
  double rbar22 = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  double d1 = 0.0;
};

/// The exponential rates behind each expectation at a given variance.
struct FadingLambdas {
  double u1 = 0.0;  // direct link into user 2
  double u2 = 0.0;  // direct link into user 1
  double v1 = 0.0;  // user 1 -> relay, through compression
  double v2 = 0.0;  // user 2 -> relay, through compression
  double v3 = 0.0;  // relay -> user 2
  double v4 = 0.0;  // relay -> user 1
};

FadingLambdas fading_lambdas(const FadingTwrcChannel& ch, double sigma2);

FadingRateTuple fading_rate_tuple(const FadingTwrcChannel& ch, double sigma2);
FadingRateTuple fading_rate_tuple_quadrature(const FadingTwrcChannel& ch,
                                             double sigma2);

struct MonteCarloRates {
  FadingRateTuple mean;
  FadingRateTuple standard_error;
  std::size_t samples = 0;
};

/// Sample means over complex-Gaussian coefficients, seeded explicitly.
MonteCarloRates fading_rate_tuple_monte_carlo(const FadingTwrcChannel& ch,
                                              double sigma2,
                                              std::size_t samples,
                                              std::uint64_t seed);

/// Variance thresholds in the channel's own labeling. `gbar` and `nbar`
/// come from the sum-rate analysis, which labels users so that e1 >= e2;
/// gbar is reported in that labeling (+inf when r12 + r21 keeps rising).
struct FadingThresholds {
  double c1bar = 0.0;
  double c2bar = 0.0;
  double z1bar = 0.0;
  double e1bar = 0.0;
  double e2bar = 0.0;
  double gbar = 0.0;
  double nbar = 0.0;
};

FadingThresholds fading_thresholds(const FadingTwrcChannel& ch);

double fading_sum_rate(const FadingTwrcChannel& ch, double sigma2);

/// Only cf_nobinning and nnc are defined for the fading channel.
RegionBoundary fading_region(const FadingTwrcChannel& ch, Scheme scheme,
                             const GridSpec& spec = {});

// Predicates on precomputed thresholds, shared with the map sweeps.
bool fading_same_region(const FadingThresholds& t);
bool fading_same_sumrate(const FadingThresholds& t);

bool fading_check_same_region(const FadingTwrcChannel& ch);
SumRateOptimum fading_optimal_sigma_nnc(const FadingTwrcChannel& ch);
bool fading_check_same_sumrate(const FadingTwrcChannel& ch);
SumRateOptimum fading_sumrate_cf_nobinning(const FadingTwrcChannel& ch);

}  // namespace relay
