#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "relay_rates/info_core.hpp"

namespace relay {

// Tolerance (bits) for independence/Markov checks and for equality verdicts.
inline constexpr double kBitsTolerance = 1e-9;

struct NamedValue {
  std::string name;
  double value = 0.0;
};

struct SchemeRates {
  double r1_bound = 0.0;
  double r2_bound = 0.0;
  bool feasible = true;
  // Raw (unclamped) bound terms and constraint sides.
  std::vector<NamedValue> active_constraints;
  // Empty when feasible.
  std::string violated;

  double constraint(std::string_view name) const;  // NameError when absent
};

/// Joint over x, xr, y, yr, yhat with p(x)p(xr)p(yhat|yr,xr)p(y,yr|x,xr).
/// Construction checks that the inputs are independent and that yhat is
/// conditionally independent of (x, y) given (xr, yr); FactorizationError
/// otherwise.
class OneWayDistribution {
 public:
  explicit OneWayDistribution(JointPmf pmf);

  /// `channel` is p(y,yr|x,xr) and `compression` is p(yhat|yr,xr).
  static OneWayDistribution from_components(const JointPmf& px,
                                            const JointPmf& pxr,
                                            const ConditionalPmf& channel,
                                            const ConditionalPmf& compression);

  const JointPmf& pmf() const noexcept { return pmf_; }

 private:
  JointPmf pmf_;
};

/// Joint over x1, x2, xr, y1, y2, yr, yhat with
/// p(x1)p(x2)p(xr)p(y1,y2,yr|x1,x2,xr)p(yhat|xr,yr).
class TwoWayDistribution {
 public:
  explicit TwoWayDistribution(JointPmf pmf);

  static TwoWayDistribution from_components(const JointPmf& px1,
                                            const JointPmf& px2,
                                            const JointPmf& pxr,
                                            const ConditionalPmf& channel,
                                            const ConditionalPmf& compression);

  const JointPmf& pmf() const noexcept { return pmf_; }

 private:
  JointPmf pmf_;
};

SchemeRates oneway_cf_nobinning(const OneWayDistribution& d);

struct OneWayOriginalRates {
  // min{I(X,Xr;Y) - I(Yhat;Yr|X,Xr,Y), I(X;Y,Yhat|Xr)}, never infeasible.
  SchemeRates min_form;
  // I(X;Y,Yhat|Xr) subject to I(Xr;Y) >= I(Yhat;Yr|Xr,Y).
  SchemeRates three_step;
};

OneWayOriginalRates oneway_cf_original(const OneWayDistribution& d);

/// A scheme can always fall back to a constant compression index, which
/// achieves I(X;Y|Xr) with no constraint. The achievable rate for the given
/// distribution is therefore the larger of the two.
double oneway_achievable_rate(const SchemeRates& r, const OneWayDistribution& d);

/// Every mutual-information term used by the two-way schemes, named after
/// the role it plays. "q" terms are the compression penalties.
struct TwoWayTerms {
  double side1 = 0.0;         // I(X1;Y2,Yhat|X2,Xr)
  double joint1 = 0.0;        // I(X1,Xr;Y2|X2) - I(Yhat;Yr|X1,X2,Xr,Y2)
  double side2 = 0.0;         // I(X2;Y1,Yhat|X1,Xr)
  double joint2 = 0.0;        // I(X2,Xr;Y1|X1) - I(Yhat;Yr|X1,X2,Xr,Y1)
  double q_full1 = 0.0;       // I(Yhat;Yr|X1,X2,Xr,Y1)
  double q_full2 = 0.0;       // I(Yhat;Yr|X1,X2,Xr,Y2)
  double q_own1 = 0.0;        // I(Yhat;Yr|X1,Xr,Y1)
  double q_own2 = 0.0;        // I(Yhat;Yr|X2,Xr,Y2)
  double relay_link1 = 0.0;   // I(Xr;Y1|X1)
  double relay_link2 = 0.0;   // I(Xr;Y2|X2)
  double relay_both1 = 0.0;   // I(Xr;Y1|X1,X2)
  double boundary1 = 0.0;     // I(Xr;Y2|X2) - I(Yhat;Y2|Xr)
  double boundary2 = 0.0;     // I(Xr;Y1|X1) - I(Yhat;Y1|Xr)
};

TwoWayTerms two_way_terms(const TwoWayDistribution& d);

SchemeRates twrc_cf_nobinning(const TwoWayDistribution& d);
SchemeRates twrc_cf_original(const TwoWayDistribution& d);
SchemeRates twrc_nnc(const TwoWayDistribution& d);
// Finite-block decoding without resolving the compression index, sent once
// or repeated twice (the last-block penalty is halved).
SchemeRates twrc_relaxed_norepeat(const TwoWayDistribution& d);
SchemeRates twrc_relaxed_repeat2(const TwoWayDistribution& d);

/// R2 bounds from simultaneous decoding over all blocks. The raw values are
/// the literal expressions; the effective values cap each at the NNC R2
/// bound, since both decoders also satisfy NNC's joint constraint.
struct SimultaneousBounds {
  double all_blocks = 0.0;        // side2 - q_full1
  double skip_last_index = 0.0;   // side2 + relay_both1 - q_full1
  double nnc_r2 = 0.0;
  double effective_all_blocks = 0.0;
  double effective_skip_last_index = 0.0;
};

SimultaneousBounds twrc_simultaneous_bounds(const TwoWayDistribution& d);

// Necessary for the binning-based and no-binning regions to coincide: both
// relay links carry the same information and both own-side compression
// penalties agree (within kBitsTolerance).
bool original_matches_nobinning_condition(const TwoWayDistribution& d);

/// Evaluates every scheme for a {"model": "oneway-dmc"|"twrc-dmc", "axes",
/// "probs"} document and returns the JSON report.
std::string evaluate_dmc_json(std::string_view text);

}  // namespace relay
