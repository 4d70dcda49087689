#pragma once

#include "relay_rates/region.hpp"

namespace relay {

/// Real Gaussian two-way relay channel with unit noise. gij is the amplitude
/// gain from node j to node i, e.g. g12 carries user 2's signal to user 1
/// and g1r carries the relay's signal to user 1.
struct GaussianTwrcChannel {
  double g12 = 1.0;
  double g1r = 1.0;
  double g21 = 1.0;
  double g2r = 1.0;
  double gr1 = 1.0;
  double gr2 = 1.0;
  double power = 1.0;

  /// DomainError unless power > 0 and every gain is finite.
  void validate() const;
  /// The same channel with user indices exchanged.
  GaussianTwrcChannel swapped_users() const;
};

/// 0.5 * log2(1 + snr); DomainError for negative snr.
double capacity(double snr);

/// r11/r12 bound user 1's rate (decoded at user 2), r21/r22 user 2's rate.
/// r12 and r22 carry the compression penalty and may be negative.
struct RateTuple {
  double r11 = 0.0;
  double r12 = 0.0;
  double r21 = 0.0;
  double r22 = 0.0;
};

RateTuple rate_tuple(const GaussianTwrcChannel& ch, double sigma2);

/// Compression-variance thresholds: c is where the relay's description
/// becomes decodable, e where the two bounds on a user's rate cross, and r
/// the lower limit when the relay bins its compression index.
struct SigmaThresholds {
  double c1 = 0.0;
  double c2 = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
  double r = 0.0;
};

SigmaThresholds thresholds(const GaussianTwrcChannel& ch);

/// Stationary point of r12 + r21; +inf when the denominator vanishes and
/// possibly negative (meaning: no stationary point).
double sigma_stationary(const GaussianTwrcChannel& ch);
/// Where r12 crosses zero.
double sigma_zero_crossing(const GaussianTwrcChannel& ch);

/// max(0, min(r11, r12)) + max(0, min(r21, r22)).
double sum_rate(const GaussianTwrcChannel& ch, double sigma2);

/// Lowest admissible compression variance of a scheme (0 for nnc).
double scheme_lower_bound(const GaussianTwrcChannel& ch, Scheme s);

/// The shared sweep for a channel: every scheme is evaluated on the same
/// values (restricted to its admissible set), with all thresholds included.
std::vector<double> default_sigma_grid(const GaussianTwrcChannel& ch,
                                       const GridSpec& spec = {});

RegionBoundary region(const GaussianTwrcChannel& ch, Scheme scheme,
                      const GridSpec& spec = {});

/// Binning costs nothing: the relay-to-user gains match and both users see
/// the same total received gain (relative tolerance 1e-12).
bool check_same_region_original(const GaussianTwrcChannel& ch);
/// No-binning region equals the nnc region: c1 <= e2 and c2 <= e1.
bool check_same_region_nnc(const GaussianTwrcChannel& ch);

SumRateOptimum optimal_sigma_nnc(const GaussianTwrcChannel& ch);

/// True when the nnc sum-rate optimum is admissible without binning, i.e.
/// max(c1, c2) <= sigma_N.
bool check_same_sumrate(const GaussianTwrcChannel& ch);

/// Best sum rate over sigma2 >= max(c1, c2), by piecewise Brent search
/// between thresholds.
SumRateOptimum sumrate_cf_nobinning(const GaussianTwrcChannel& ch);

/// Sum rate with a binning relay, at its best variance sigma_r.
SumRateOptimum sumrate_cf_original(const GaussianTwrcChannel& ch);

}  // namespace relay
