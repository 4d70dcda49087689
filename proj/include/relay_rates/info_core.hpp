#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace relay {

struct Axis {
  std::string name;
  std::size_t size = 0;

  friend bool operator==(const Axis&, const Axis&) = default;
};

// Dense tables larger than this are refused with SizeError.
inline constexpr std::size_t kMaxPmfEntries = 10'000'000;

// Entries below this are treated as exact zeros when taking logarithms.
inline constexpr double kZeroProbability = 1e-15;

/// Ordered set of variable names used to select the arguments of H(.) and
/// I(.;.|.). Duplicate names are rejected at construction.
class VarSet {
 public:
  VarSet() = default;
  VarSet(std::initializer_list<std::string> names);
  explicit VarSet(std::vector<std::string> names);

  /// Parses a comma-separated list such as "x1,xr". Blank entries are
  /// skipped, so "" gives the empty set.
  static VarSet parse(std::string_view csv);

  const std::vector<std::string>& names() const noexcept { return names_; }
  bool empty() const noexcept { return names_.empty(); }
  std::size_t size() const noexcept { return names_.size(); }
  bool contains(std::string_view name) const;

  VarSet operator|(const VarSet& other) const;
  bool disjoint(const VarSet& other) const;

 private:
  std::vector<std::string> names_;
};

/// Normalized probability mass function over the cartesian product of named
/// finite alphabets. Storage is dense and row-major in the declared axis
/// order (the last axis varies fastest).
class JointPmf {
 public:
  /// Validates nonnegativity, unit mass (within 1e-12), unique names and the
  /// size cap.
  JointPmf(std::vector<Axis> axes, std::vector<double> probs);

  /// Divides nonnegative weights by their sum before validating.
  static JointPmf from_weights(std::vector<Axis> axes,
                               std::vector<double> weights);
  static JointPmf uniform(std::vector<Axis> axes);

  const std::vector<Axis>& axes() const noexcept { return axes_; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }

  /// Position of `name` in axes(); throws NameError when absent.
  std::size_t axis_index(std::string_view name) const;
  bool has_axis(std::string_view name) const;
  VarSet variables() const;

  /// Probability at a full index tuple (one entry per axis).
  double at(std::span<const std::size_t> index) const;

 private:
  std::vector<Axis> axes_;
  std::vector<double> probs_;
};

/// p(outputs | given): row-major over the given axes followed by the output
/// axes. Every slice for a fixed `given` index must sum to one.
struct ConditionalPmf {
  std::vector<Axis> given;
  std::vector<Axis> outputs;
  std::vector<double> probs;

  /// Throws NormalizationError naming the first slice that does not sum to
  /// one within `tol`, ArgumentError on shape mismatch.
  void validate(double tol = 1e-9) const;
};

JointPmf marginalize(const JointPmf& pmf, const VarSet& keep);

/// Joint entropy H(vars) in bits.
double entropy(const JointPmf& pmf, const VarSet& vars);

/// I(A;B|C) in bits. A, B, C must be pairwise disjoint (ArgumentError) and
/// drawn from the pmf's axes (NameError). Rounding noise below zero is
/// clamped so the result is never negative.
double conditional_mutual_information(const JointPmf& pmf, const VarSet& a,
                                      const VarSet& b, const VarSet& c = {});

inline double mutual_information(const JointPmf& pmf, const VarSet& a,
                                 const VarSet& b) {
  return conditional_mutual_information(pmf, a, b, {});
}

/// Assembles prod_i p(inputs_i) * prod_j p(outputs_j | given_j). Each
/// conditional may only condition on variables introduced earlier, and must
/// introduce new ones. Axis order of the result is the order of introduction.
JointPmf factorized_pmf(std::span<const JointPmf> inputs,
                        std::span<const ConditionalPmf> conditionals);

/// {"axes":[["x1",2],...],"probs":[...]}; extra top-level keys are ignored on
/// input.
JointPmf pmf_from_json(std::string_view text);
std::string pmf_to_json(const JointPmf& pmf);

}  // namespace relay
