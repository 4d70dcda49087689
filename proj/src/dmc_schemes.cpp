#include "relay_rates/dmc_schemes.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <nlohmann/json.hpp>

#include "relay_rates/errors.hpp"

namespace relay {

namespace {

// Factorization checks tolerate rounding noise only.
constexpr double kStructureTolerance = 1e-10;

double cmi(const JointPmf& p, const VarSet& a, const VarSet& b,
           const VarSet& c = {}) {
  return conditional_mutual_information(p, a, b, c);
}

void require_axes(const JointPmf& pmf, std::initializer_list<const char*> names,
                  const char* model) {
  if (pmf.axes().size() != names.size()) {
    throw FactorizationError(std::string(model) + " needs exactly " +
                             std::to_string(names.size()) + " variables");
  }
  for (const char* n : names) {
    if (!pmf.has_axis(n)) {
      throw FactorizationError(std::string(model) + " is missing variable '" +
                               n + "'");
    }
  }
}

void require_small(double value, const std::string& what) {
  if (value > kStructureTolerance) {
    throw FactorizationError(what + " (" + std::to_string(value) + " bits)");
  }
}

SchemeRates make_rates(double r1, double r2,
                       std::vector<NamedValue> constraints,
                       std::string violated = {}) {
  SchemeRates out;
  out.feasible = violated.empty();
  out.violated = std::move(violated);
  out.active_constraints = std::move(constraints);
  if (out.feasible) {
    out.r1_bound = std::max(0.0, r1);
    out.r2_bound = std::max(0.0, r2);
  }
  return out;
}

// The constraint holds when lhs <= rhs up to rounding.
bool holds(double lhs, double rhs) { return lhs <= rhs + kStructureTolerance; }

}  // namespace

double SchemeRates::constraint(std::string_view name) const {
  for (const auto& c : active_constraints) {
    if (c.name == name) return c.value;
  }
  throw NameError("no constraint named '" + std::string(name) + "'");
}

OneWayDistribution::OneWayDistribution(JointPmf pmf) : pmf_(std::move(pmf)) {
  require_axes(pmf_, {"x", "xr", "y", "yr", "yhat"}, "one-way distribution");
  require_small(cmi(pmf_, {"x"}, {"xr"}), "inputs x and xr are dependent");
  require_small(cmi(pmf_, {"yhat"}, {"x", "y"}, {"xr", "yr"}),
                "compression depends on more than (yr, xr)");
}

OneWayDistribution OneWayDistribution::from_components(
    const JointPmf& px, const JointPmf& pxr, const ConditionalPmf& channel,
    const ConditionalPmf& compression) {
  const std::array inputs{px, pxr};
  const std::array conds{channel, compression};
  return OneWayDistribution(factorized_pmf(inputs, conds));
}

TwoWayDistribution::TwoWayDistribution(JointPmf pmf) : pmf_(std::move(pmf)) {
  require_axes(pmf_, {"x1", "x2", "xr", "y1", "y2", "yr", "yhat"},
               "two-way distribution");
  // Mutual independence of three inputs: I(x1;x2) = 0 and I(xr;x1,x2) = 0.
  require_small(cmi(pmf_, {"x1"}, {"x2"}), "inputs x1 and x2 are dependent");
  require_small(cmi(pmf_, {"xr"}, {"x1", "x2"}),
                "relay input depends on the user inputs");
  require_small(cmi(pmf_, {"yhat"}, {"x1", "x2", "y1", "y2"}, {"xr", "yr"}),
                "compression depends on more than (yr, xr)");
}

TwoWayDistribution TwoWayDistribution::from_components(
    const JointPmf& px1, const JointPmf& px2, const JointPmf& pxr,
    const ConditionalPmf& channel, const ConditionalPmf& compression) {
  const std::array inputs{px1, px2, pxr};
  const std::array conds{channel, compression};
  return TwoWayDistribution(factorized_pmf(inputs, conds));
}

SchemeRates oneway_cf_nobinning(const OneWayDistribution& d) {
  const auto& p = d.pmf();
  const double joint =
      cmi(p, {"x", "xr"}, {"y"}) - cmi(p, {"yhat"}, {"yr"}, {"x", "xr", "y"});
  const double side = cmi(p, {"x"}, {"y", "yhat"}, {"xr"});
  const double supply = cmi(p, {"xr"}, {"y"}) + cmi(p, {"yhat"}, {"x", "y"}, {"xr"});
  const double demand = cmi(p, {"yhat"}, {"yr"}, {"xr"});
  std::vector<NamedValue> cs{{"joint_bound", joint},
                             {"side_bound", side},
                             {"compression_supply", supply},
                             {"compression_demand", demand}};
  return make_rates(std::min(joint, side), 0.0, std::move(cs),
                    holds(demand, supply) ? "" : "compression_supply");
}

OneWayOriginalRates oneway_cf_original(const OneWayDistribution& d) {
  const auto& p = d.pmf();
  const double joint =
      cmi(p, {"x", "xr"}, {"y"}) - cmi(p, {"yhat"}, {"yr"}, {"x", "xr", "y"});
  const double side = cmi(p, {"x"}, {"y", "yhat"}, {"xr"});
  const double relay_link = cmi(p, {"xr"}, {"y"});
  const double binned = cmi(p, {"yhat"}, {"yr"}, {"xr", "y"});

  OneWayOriginalRates out;
  out.min_form = make_rates(std::min(joint, side), 0.0,
                            {{"joint_bound", joint}, {"side_bound", side}});
  out.three_step = make_rates(
      side, 0.0,
      {{"side_bound", side},
       {"relay_link", relay_link},
       {"binned_compression", binned}},
      holds(binned, relay_link) ? "" : "relay_link");
  return out;
}

double oneway_achievable_rate(const SchemeRates& r,
                              const OneWayDistribution& d) {
  const double direct = cmi(d.pmf(), {"x"}, {"y"}, {"xr"});
  return std::max(r.r1_bound, direct);
}

TwoWayTerms two_way_terms(const TwoWayDistribution& d) {
  const auto& p = d.pmf();
  TwoWayTerms t;
  t.q_full1 = cmi(p, {"yhat"}, {"yr"}, {"x1", "x2", "xr", "y1"});
  t.q_full2 = cmi(p, {"yhat"}, {"yr"}, {"x1", "x2", "xr", "y2"});
  t.q_own1 = cmi(p, {"yhat"}, {"yr"}, {"x1", "xr", "y1"});
  t.q_own2 = cmi(p, {"yhat"}, {"yr"}, {"x2", "xr", "y2"});
  t.side1 = cmi(p, {"x1"}, {"y2", "yhat"}, {"x2", "xr"});
  t.side2 = cmi(p, {"x2"}, {"y1", "yhat"}, {"x1", "xr"});
  t.joint1 = cmi(p, {"x1", "xr"}, {"y2"}, {"x2"}) - t.q_full2;
  t.joint2 = cmi(p, {"x2", "xr"}, {"y1"}, {"x1"}) - t.q_full1;
  t.relay_link1 = cmi(p, {"xr"}, {"y1"}, {"x1"});
  t.relay_link2 = cmi(p, {"xr"}, {"y2"}, {"x2"});
  t.relay_both1 = cmi(p, {"xr"}, {"y1"}, {"x1", "x2"});
  t.boundary1 = t.relay_link2 - cmi(p, {"yhat"}, {"y2"}, {"xr"});
  t.boundary2 = t.relay_link1 - cmi(p, {"yhat"}, {"y1"}, {"xr"});
  return t;
}

namespace {

std::vector<NamedValue> joint_decoding_terms(const TwoWayTerms& t) {
  return {{"side1", t.side1},
          {"joint1", t.joint1},
          {"side2", t.side2},
          {"joint2", t.joint2}};
}

SchemeRates relaxed(const TwoWayDistribution& d, double boundary_weight) {
  const TwoWayTerms t = two_way_terms(d);
  const double extra1 = t.joint1 + boundary_weight * t.boundary1;
  const double extra2 = t.joint2 + boundary_weight * t.boundary2;
  auto cs = joint_decoding_terms(t);
  cs.push_back({"boundary1", extra1});
  cs.push_back({"boundary2", extra2});
  return make_rates(std::min({t.side1, t.joint1, extra1}),
                    std::min({t.side2, t.joint2, extra2}), std::move(cs));
}

}  // namespace

SchemeRates twrc_cf_nobinning(const TwoWayDistribution& d) {
  const TwoWayTerms t = two_way_terms(d);
  auto cs = joint_decoding_terms(t);
  cs.push_back({"compression1", t.q_full1});
  cs.push_back({"relay_link1", t.relay_link1});
  cs.push_back({"compression2", t.q_full2});
  cs.push_back({"relay_link2", t.relay_link2});
  std::string violated;
  if (!holds(t.q_full1, t.relay_link1)) {
    violated = "relay_link1";
  } else if (!holds(t.q_full2, t.relay_link2)) {
    violated = "relay_link2";
  }
  return make_rates(std::min(t.side1, t.joint1), std::min(t.side2, t.joint2),
                    std::move(cs), std::move(violated));
}

SchemeRates twrc_cf_original(const TwoWayDistribution& d) {
  const TwoWayTerms t = two_way_terms(d);
  const double demand = std::max(t.q_own1, t.q_own2);
  const double supply = std::min(t.relay_link1, t.relay_link2);
  std::vector<NamedValue> cs{{"side1", t.side1},
                             {"side2", t.side2},
                             {"binned_compression1", t.q_own1},
                             {"binned_compression2", t.q_own2},
                             {"relay_link1", t.relay_link1},
                             {"relay_link2", t.relay_link2}};
  return make_rates(t.side1, t.side2, std::move(cs),
                    holds(demand, supply) ? "" : "binned_compression");
}

SchemeRates twrc_nnc(const TwoWayDistribution& d) {
  const TwoWayTerms t = two_way_terms(d);
  return make_rates(std::min(t.side1, t.joint1), std::min(t.side2, t.joint2),
                    joint_decoding_terms(t));
}

SchemeRates twrc_relaxed_norepeat(const TwoWayDistribution& d) {
  return relaxed(d, 1.0);
}

SchemeRates twrc_relaxed_repeat2(const TwoWayDistribution& d) {
  return relaxed(d, 0.5);
}

SimultaneousBounds twrc_simultaneous_bounds(const TwoWayDistribution& d) {
  const TwoWayTerms t = two_way_terms(d);
  SimultaneousBounds b;
  b.all_blocks = t.side2 - t.q_full1;
  b.skip_last_index = t.side2 + t.relay_both1 - t.q_full1;
  b.nnc_r2 = std::max(0.0, std::min(t.side2, t.joint2));
  b.effective_all_blocks = std::clamp(b.all_blocks, 0.0, b.nnc_r2);
  b.effective_skip_last_index = std::clamp(b.skip_last_index, 0.0, b.nnc_r2);
  return b;
}

bool original_matches_nobinning_condition(const TwoWayDistribution& d) {
  const TwoWayTerms t = two_way_terms(d);
  return std::abs(t.relay_link1 - t.relay_link2) <= kBitsTolerance &&
         std::abs(t.q_own1 - t.q_own2) <= kBitsTolerance;
}

namespace {

nlohmann::json to_json(std::string_view scheme, const SchemeRates& r) {
  nlohmann::json cs = nlohmann::json::object();
  for (const auto& c : r.active_constraints) cs[c.name] = c.value;
  nlohmann::json out{{"scheme", scheme},
                     {"r1_bound", r.r1_bound},
                     {"r2_bound", r.r2_bound},
                     {"feasible", r.feasible},
                     {"constraints", cs}};
  if (!r.feasible) out["violated"] = r.violated;
  return out;
}

}  // namespace

std::string evaluate_dmc_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("model") || !doc["model"].is_string()) {
    throw ParseError("missing string field 'model'");
  }
  const std::string model = doc["model"];
  JointPmf pmf = pmf_from_json(text);

  nlohmann::json out{{"model", model}};
  nlohmann::json schemes = nlohmann::json::array();
  if (model == "oneway-dmc") {
    const OneWayDistribution d(std::move(pmf));
    const SchemeRates nb = oneway_cf_nobinning(d);
    const OneWayOriginalRates orig = oneway_cf_original(d);
    schemes.push_back(to_json("cf_nobinning", nb));
    schemes.push_back(to_json("cf_original_min_form", orig.min_form));
    schemes.push_back(to_json("cf_original_three_step", orig.three_step));
    out["achievable"] = {
        {"cf_nobinning", oneway_achievable_rate(nb, d)},
        {"cf_original", oneway_achievable_rate(orig.min_form, d)}};
  } else if (model == "twrc-dmc") {
    const TwoWayDistribution d(std::move(pmf));
    schemes.push_back(to_json("cf_original", twrc_cf_original(d)));
    schemes.push_back(to_json("cf_nobinning", twrc_cf_nobinning(d)));
    schemes.push_back(to_json("nnc", twrc_nnc(d)));
    schemes.push_back(to_json("relaxed_norepeat", twrc_relaxed_norepeat(d)));
    schemes.push_back(to_json("relaxed_repeat2", twrc_relaxed_repeat2(d)));
    const SimultaneousBounds b = twrc_simultaneous_bounds(d);
    out["simultaneous_r2"] = {
        {"all_blocks", b.all_blocks},
        {"skip_last_index", b.skip_last_index},
        {"nnc_r2", b.nnc_r2},
        {"effective_all_blocks", b.effective_all_blocks},
        {"effective_skip_last_index", b.effective_skip_last_index}};
    out["original_matches_nobinning_condition"] =
        original_matches_nobinning_condition(d);
  } else {
    throw ArgumentError("unknown DMC model '" + model + "'");
  }
  out["schemes"] = std::move(schemes);
  return out.dump(2);
}

}  // namespace relay
