#include "relay_rates/info_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "relay_rates/errors.hpp"

namespace relay {

namespace {

std::size_t checked_product(const std::vector<Axis>& axes) {
  std::size_t total = 1;
  for (const auto& ax : axes) {
    if (ax.size == 0) {
      throw ArgumentError("axis '" + ax.name + "' has an empty alphabet");
    }
    if (total > kMaxPmfEntries / ax.size) {
      throw SizeError("joint alphabet exceeds " +
                      std::to_string(kMaxPmfEntries) + " entries");
    }
    total *= ax.size;
  }
  return total;
}

void check_unique_names(const std::vector<Axis>& axes) {
  for (std::size_t i = 0; i < axes.size(); ++i) {
    for (std::size_t j = i + 1; j < axes.size(); ++j) {
      if (axes[i].name == axes[j].name) {
        throw ArgumentError("duplicate variable name '" + axes[i].name + "'");
      }
    }
  }
}

// Row-major strides of `axes`.
std::vector<std::size_t> strides_of(const std::vector<Axis>& axes) {
  std::vector<std::size_t> strides(axes.size(), 1);
  for (std::size_t i = axes.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * axes[i].size;
  }
  return strides;
}

double plogp_sum(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > kZeroProbability) h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

// ---------------------------------------------------------------- VarSet

VarSet::VarSet(std::initializer_list<std::string> names)
    : VarSet(std::vector<std::string>(names)) {}

VarSet::VarSet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    for (std::size_t j = i + 1; j < names_.size(); ++j) {
      if (names_[i] == names_[j]) {
        throw ArgumentError("duplicate variable '" + names_[i] +
                            "' in variable set");
      }
    }
  }
}

VarSet VarSet::parse(std::string_view csv) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (start <= csv.size()) {
    auto end = csv.find(',', start);
    if (end == std::string_view::npos) end = csv.size();
    auto token = csv.substr(start, end - start);
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front())))
      token.remove_prefix(1);
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back())))
      token.remove_suffix(1);
    if (!token.empty()) names.emplace_back(token);
    start = end + 1;
  }
  return VarSet(std::move(names));
}

bool VarSet::contains(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

VarSet VarSet::operator|(const VarSet& other) const {
  auto merged = names_;
  for (const auto& n : other.names_) {
    if (!contains(n)) merged.push_back(n);
  }
  return VarSet(std::move(merged));
}

bool VarSet::disjoint(const VarSet& other) const {
  return std::none_of(names_.begin(), names_.end(),
                      [&](const std::string& n) { return other.contains(n); });
}

// -------------------------------------------------------------- JointPmf

JointPmf::JointPmf(std::vector<Axis> axes, std::vector<double> probs)
    : axes_(std::move(axes)), probs_(std::move(probs)) {
  check_unique_names(axes_);
  const std::size_t n = checked_product(axes_);
  if (probs_.size() != n) {
    throw ArgumentError("pmf has " + std::to_string(probs_.size()) +
                        " entries but the axes require " + std::to_string(n));
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw NormalizationError("pmf entries must be finite and nonnegative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "pmf sums to " << total << ", not 1";
    throw NormalizationError(os.str());
  }
}

JointPmf JointPmf::from_weights(std::vector<Axis> axes,
                                std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw NormalizationError("weights must be finite and nonnegative");
    }
    total += w;
  }
  if (!(total > 0.0)) throw NormalizationError("weights sum to zero");
  for (double& w : weights) w /= total;
  return JointPmf(std::move(axes), std::move(weights));
}

JointPmf JointPmf::uniform(std::vector<Axis> axes) {
  const std::size_t n = checked_product(axes);
  return JointPmf(std::move(axes), std::vector<double>(n, 1.0 / double(n)));
}

std::size_t JointPmf::axis_index(std::string_view name) const {
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (axes_[i].name == name) return i;
  }
  throw NameError("unknown variable '" + std::string(name) + "'");
}

bool JointPmf::has_axis(std::string_view name) const {
  return std::any_of(axes_.begin(), axes_.end(),
                     [&](const Axis& a) { return a.name == name; });
}

VarSet JointPmf::variables() const {
  std::vector<std::string> names;
  names.reserve(axes_.size());
  for (const auto& a : axes_) names.push_back(a.name);
  return VarSet(std::move(names));
}

double JointPmf::at(std::span<const std::size_t> index) const {
  if (index.size() != axes_.size()) {
    throw ArgumentError("index rank does not match pmf rank");
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (index[i] >= axes_[i].size) throw ArgumentError("index out of range");
    flat = flat * axes_[i].size + index[i];
  }
  return probs_[flat];
}

// ------------------------------------------------------- ConditionalPmf

void ConditionalPmf::validate(double tol) const {
  std::vector<Axis> all = given;
  all.insert(all.end(), outputs.begin(), outputs.end());
  check_unique_names(all);
  if (outputs.empty()) throw ArgumentError("conditional pmf has no outputs");
  const std::size_t n = checked_product(all);
  if (probs.size() != n) {
    throw ArgumentError("conditional pmf has " + std::to_string(probs.size()) +
                        " entries, expected " + std::to_string(n));
  }
  std::size_t slice = 1;
  for (const auto& a : outputs) slice *= a.size;
  for (std::size_t s = 0; s < n / slice; ++s) {
    double total = 0.0;
    for (std::size_t k = 0; k < slice; ++k) {
      const double p = probs[s * slice + k];
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw NormalizationError("conditional pmf has a negative entry");
      }
      total += p;
    }
    if (std::abs(total - 1.0) > tol) {
      std::ostringstream os;
      os << "conditional slice " << s << " over given (";
      for (std::size_t i = 0; i < given.size(); ++i)
        os << (i ? "," : "") << given[i].name;
      os << ") sums to " << total;
      throw NormalizationError(os.str());
    }
  }
}

// ---------------------------------------------------------- operations

JointPmf marginalize(const JointPmf& pmf, const VarSet& keep) {
  const auto& axes = pmf.axes();
  std::vector<bool> kept(axes.size(), false);
  for (const auto& name : keep.names()) kept[pmf.axis_index(name)] = true;

  std::vector<Axis> out_axes;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (kept[i]) out_axes.push_back(axes[i]);
  }
  // Stride of each source axis inside the marginal table (0 when summed out).
  std::vector<std::size_t> out_stride(axes.size(), 0);
  {
    std::size_t s = 1;
    for (std::size_t i = axes.size(); i-- > 0;) {
      if (kept[i]) {
        out_stride[i] = s;
        s *= axes[i].size;
      }
    }
  }
  std::size_t out_size = 1;
  for (const auto& a : out_axes) out_size *= a.size;

  std::vector<double> out(out_size, 0.0);
  std::vector<std::size_t> idx(axes.size(), 0);
  std::size_t target = 0;
  for (double p : pmf.probs()) {
    out[target] += p;
    // odometer increment, last axis fastest
    for (std::size_t i = axes.size(); i-- > 0;) {
      if (++idx[i] < axes[i].size) {
        target += out_stride[i];
        break;
      }
      target -= out_stride[i] * (axes[i].size - 1);
      idx[i] = 0;
    }
  }
  // Summation order can leave the total a few ulps away from one.
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& p : out) p /= total;
  return JointPmf(std::move(out_axes), std::move(out));
}

double entropy(const JointPmf& pmf, const VarSet& vars) {
  if (vars.empty()) return 0.0;
  if (vars.size() == pmf.axes().size()) {
    for (const auto& n : vars.names()) pmf.axis_index(n);
    return plogp_sum(pmf.probs());
  }
  return plogp_sum(marginalize(pmf, vars).probs());
}

double conditional_mutual_information(const JointPmf& pmf, const VarSet& a,
                                      const VarSet& b, const VarSet& c) {
  if (!a.disjoint(b) || !a.disjoint(c) || !b.disjoint(c)) {
    throw ArgumentError("I(A;B|C) needs pairwise disjoint variable sets");
  }
  if (a.empty() || b.empty()) return 0.0;
  for (const auto* set : {&a, &b, &c}) {
    for (const auto& n : set->names()) pmf.axis_index(n);
  }
  const double value = entropy(pmf, a | c) + entropy(pmf, b | c) -
                       entropy(pmf, a | b | c) - entropy(pmf, c);
  return value < 0.0 ? 0.0 : value;
}

JointPmf factorized_pmf(std::span<const JointPmf> inputs,
                        std::span<const ConditionalPmf> conditionals) {
  struct Factor {
    const std::vector<double>* probs;
    std::vector<std::size_t> stride;  // per joint axis, 0 if not involved
  };

  std::vector<Axis> axes;
  auto find_axis = [&](const std::string& name) -> long {
    for (std::size_t i = 0; i < axes.size(); ++i)
      if (axes[i].name == name) return long(i);
    return -1;
  };
  auto add_new = [&](const Axis& a) {
    if (find_axis(a.name) >= 0) {
      throw ArgumentError("variable '" + a.name + "' introduced twice");
    }
    axes.push_back(a);
  };

  // Factor axis lists in factor-local order; mapped to joint positions below.
  std::vector<std::pair<const std::vector<double>*, std::vector<Axis>>> local;
  for (const auto& m : inputs) {
    for (const auto& a : m.axes()) add_new(a);
    local.emplace_back(&m.probs(), m.axes());
  }
  for (const auto& cond : conditionals) {
    cond.validate();
    for (const auto& g : cond.given) {
      const long pos = find_axis(g.name);
      if (pos < 0) {
        throw ArgumentError("conditional depends on '" + g.name +
                            "' before it is introduced");
      }
      if (axes[std::size_t(pos)].size != g.size) {
        throw ArgumentError("alphabet size of '" + g.name + "' disagrees");
      }
    }
    for (const auto& o : cond.outputs) add_new(o);
    std::vector<Axis> fa = cond.given;
    fa.insert(fa.end(), cond.outputs.begin(), cond.outputs.end());
    local.emplace_back(&cond.probs, std::move(fa));
  }
  const std::size_t total = checked_product(axes);

  std::vector<Factor> factors;
  for (auto& [probs, fa] : local) {
    Factor f{probs, std::vector<std::size_t>(axes.size(), 0)};
    const auto st = strides_of(fa);
    for (std::size_t k = 0; k < fa.size(); ++k) {
      f.stride[std::size_t(find_axis(fa[k].name))] = st[k];
    }
    factors.push_back(std::move(f));
  }

  std::vector<double> joint(total);
  std::vector<std::size_t> idx(axes.size(), 0);
  std::vector<std::size_t> offset(factors.size(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    double p = 1.0;
    for (std::size_t f = 0; f < factors.size() && p != 0.0; ++f) {
      p *= (*factors[f].probs)[offset[f]];
    }
    joint[flat] = p;
    for (std::size_t i = axes.size(); i-- > 0;) {
      if (++idx[i] < axes[i].size) {
        for (std::size_t f = 0; f < factors.size(); ++f)
          offset[f] += factors[f].stride[i];
        break;
      }
      for (std::size_t f = 0; f < factors.size(); ++f)
        offset[f] -= factors[f].stride[i] * (axes[i].size - 1);
      idx[i] = 0;
    }
  }
  return JointPmf::from_weights(std::move(axes), std::move(joint));
}

// ----------------------------------------------------------------- JSON

JointPmf pmf_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("axes") || !doc.contains("probs")) {
    throw ParseError("pmf JSON needs \"axes\" and \"probs\"");
  }
  std::vector<Axis> axes;
  std::vector<double> probs;
  try {
    for (const auto& entry : doc.at("axes")) {
      if (!entry.is_array() || entry.size() != 2) {
        throw ParseError("each axis must be [name, size]");
      }
      const auto size = entry[1].get<long long>();
      if (size <= 0) throw ParseError("alphabet sizes must be positive");
      axes.push_back({entry[0].get<std::string>(), std::size_t(size)});
    }
    probs = doc.at("probs").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed pmf JSON: ") + e.what());
  }
  return JointPmf(std::move(axes), std::move(probs));
}

std::string pmf_to_json(const JointPmf& pmf) {
  nlohmann::json doc;
  doc["axes"] = nlohmann::json::array();
  for (const auto& a : pmf.axes()) {
    doc["axes"].push_back(nlohmann::json::array({a.name, a.size}));
  }
  doc["probs"] = pmf.probs();
  return doc.dump();
}

}  // namespace relay
