#include "relay_rates/gaussian_twrc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "relay_rates/errors.hpp"
#include "relay_rates/numerics.hpp"

namespace relay {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool rel_equal(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

void require_relay_gains(const GaussianTwrcChannel& ch) {
  if (ch.g1r == 0.0 || ch.g2r == 0.0) {
    throw DegenerateChannelError("relay-to-user gain is zero");
  }
}

RegionPoint clamped_point(const GaussianTwrcChannel& ch, double s) {
  const RateTuple r = rate_tuple(ch, s);
  return {s, std::max(0.0, std::min(r.r11, r.r12)),
          std::max(0.0, std::min(r.r21, r.r22))};
}

}  // namespace

void GaussianTwrcChannel::validate() const {
  if (!(power > 0.0) || !std::isfinite(power)) {
    throw DomainError("power must be positive and finite");
  }
  for (double g : {g12, g1r, g21, g2r, gr1, gr2}) {
    if (!std::isfinite(g)) throw DomainError("channel gains must be finite");
  }
}

GaussianTwrcChannel GaussianTwrcChannel::swapped_users() const {
  return {g21, g2r, g12, g1r, gr2, gr1, power};
}

double capacity(double snr) {
  if (snr < 0.0) throw DomainError("negative SNR");
  return 0.5 * std::log2(1.0 + snr);
}

RateTuple rate_tuple(const GaussianTwrcChannel& ch, double sigma2) {
  if (!(sigma2 > 0.0)) throw DomainError("sigma2 must be positive");
  const double p = ch.power;
  // C(1/s) = 0.5*log2(1 + 1/s), written to stay accurate for large s.
  const double penalty = 0.5 * std::log1p(1.0 / sigma2) / std::log(2.0);
  RateTuple r;
  r.r11 = capacity(ch.g21 * ch.g21 * p + ch.gr1 * ch.gr1 * p / (1.0 + sigma2));
  r.r12 = capacity(ch.g21 * ch.g21 * p + ch.g2r * ch.g2r * p) - penalty;
  r.r21 = capacity(ch.g12 * ch.g12 * p + ch.gr2 * ch.gr2 * p / (1.0 + sigma2));
  r.r22 = capacity(ch.g12 * ch.g12 * p + ch.g1r * ch.g1r * p) - penalty;
  return r;
}

SigmaThresholds thresholds(const GaussianTwrcChannel& ch) {
  ch.validate();
  require_relay_gains(ch);
  const double p = ch.power;
  const double a1 = ch.g21 * ch.g21 * p;
  const double a2 = ch.g12 * ch.g12 * p;
  const double b1 = ch.g2r * ch.g2r * p;
  const double b2 = ch.g1r * ch.g1r * p;
  const double top1 = 1.0 + a1 + ch.gr1 * ch.gr1 * p;
  const double top2 = 1.0 + a2 + ch.gr2 * ch.gr2 * p;
  SigmaThresholds t;
  t.c1 = (1.0 + a1) / b1;
  t.c2 = (1.0 + a2) / b2;
  t.e1 = top1 / b1;
  t.e2 = top2 / b2;
  t.r = std::max(top1, top2) / std::min(b1, b2);
  return t;
}

double sigma_stationary(const GaussianTwrcChannel& ch) {
  const double p = ch.power;
  const double num = ch.gr2 * ch.gr2 * p + ch.g12 * ch.g12 * p + 1.0;
  const double den = ch.gr2 * ch.gr2 * p - ch.g12 * ch.g12 * p - 1.0;
  return den == 0.0 ? kInf : num / den;
}

double sigma_zero_crossing(const GaussianTwrcChannel& ch) {
  const double p = ch.power;
  const double s = ch.g21 * ch.g21 * p + ch.g2r * ch.g2r * p;
  if (s == 0.0) throw DegenerateChannelError("user 1 receives nothing");
  return 1.0 / s;
}

double sum_rate(const GaussianTwrcChannel& ch, double sigma2) {
  const RegionPoint p = clamped_point(ch, sigma2);
  return p.r1 + p.r2;
}

double scheme_lower_bound(const GaussianTwrcChannel& ch, Scheme s) {
  switch (s) {
    case Scheme::Nnc: return 0.0;
    case Scheme::CfNoBinning: {
      const SigmaThresholds t = thresholds(ch);
      return std::max(t.c1, t.c2);
    }
    case Scheme::CfOriginal: return thresholds(ch).r;
  }
  return 0.0;
}

std::vector<double> default_sigma_grid(const GaussianTwrcChannel& ch,
                                       const GridSpec& spec) {
  const SigmaThresholds t = thresholds(ch);
  const double smallest = std::min({t.c1, t.c2, t.e1, t.e2});
  const double lo = spec.lo.value_or(std::min(0.5e-4, 0.5 * smallest));
  const double hi = spec.hi.value_or(10.0 * std::max({t.e1, t.e2, t.r}));
  std::vector<double> extra{t.c1, t.c2, t.e1, t.e2, t.r,
                            sigma_stationary(ch), sigma_zero_crossing(ch),
                            optimal_sigma_nnc(ch).sigma2};
  return sigma_grid(lo, hi, spec.points, extra);
}

RegionBoundary region(const GaussianTwrcChannel& ch, Scheme scheme,
                      const GridSpec& spec) {
  const std::vector<double> grid = default_sigma_grid(ch, spec);
  const double lower = scheme_lower_bound(ch, scheme);
  if (scheme == Scheme::CfOriginal) {
    // With binning each user's rate is limited only by r11 / r21.
    return sweep_region(
        [&](double s) {
          const RateTuple r = rate_tuple(ch, s);
          return RegionPoint{s, r.r11, r.r21};
        },
        grid, lower, to_string(scheme));
  }
  return sweep_region([&](double s) { return clamped_point(ch, s); }, grid,
                      lower, to_string(scheme));
}

bool check_same_region_original(const GaussianTwrcChannel& ch) {
  return rel_equal(ch.g1r, ch.g2r) &&
         rel_equal(ch.g21 * ch.g21 + ch.gr1 * ch.gr1,
                   ch.g12 * ch.g12 + ch.gr2 * ch.gr2);
}

bool check_same_region_nnc(const GaussianTwrcChannel& ch) {
  const SigmaThresholds t = thresholds(ch);
  return t.c1 <= t.e2 && t.c2 <= t.e1;
}

SumRateOptimum optimal_sigma_nnc(const GaussianTwrcChannel& ch) {
  const SigmaThresholds t0 = thresholds(ch);
  const GaussianTwrcChannel c = t0.e1 < t0.e2 ? ch.swapped_users() : ch;
  const SigmaThresholds t = t0.e1 < t0.e2 ? thresholds(c) : t0;
  SumRateBranchInput in;
  in.e1 = t.e1;
  in.e2 = t.e2;
  in.z1 = sigma_zero_crossing(c);
  in.g = sigma_stationary(c);
  in.r12 = [&](double s) { return rate_tuple(c, s).r12; };
  in.r21 = [&](double s) { return rate_tuple(c, s).r21; };
  const double s = sum_rate_optimal_sigma(in);
  // The sum rate is symmetric in the user labels, so no swap back is needed.
  return {s, sum_rate(ch, s)};
}

bool check_same_sumrate(const GaussianTwrcChannel& ch) {
  const SigmaThresholds t = thresholds(ch);
  const double need = std::max(t.c1, t.c2);
  const double sn = optimal_sigma_nnc(ch).sigma2;
  return need <= sn * (1.0 + 1e-12);
}

SumRateOptimum sumrate_cf_nobinning(const GaussianTwrcChannel& ch) {
  const SigmaThresholds t = thresholds(ch);
  const double lo = std::max(t.c1, t.c2);
  // Past max(e1, e2, r) both clamped terms only decrease.
  const double hi = std::max({lo, t.e1, t.e2, t.r}) * 2.0;
  const GaussianTwrcChannel sw = ch.swapped_users();
  const double breaks[] = {t.e1,
                           t.e2,
                           sigma_stationary(ch),
                           sigma_stationary(sw),
                           sigma_zero_crossing(ch),
                           sigma_zero_crossing(sw)};
  const Maximum m =
      maximize_piecewise([&](double s) { return sum_rate(ch, s); }, lo, hi,
                         breaks);
  return {m.x, m.value};
}

SumRateOptimum sumrate_cf_original(const GaussianTwrcChannel& ch) {
  const double s = thresholds(ch).r;
  const RateTuple r = rate_tuple(ch, s);
  return {s, r.r11 + r.r21};
}

}  // namespace relay
