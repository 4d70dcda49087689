#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relay_rates/fading_twrc.hpp"
#include "relay_rates/gaussian_twrc.hpp"

namespace relay {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct NodeLayout {
  Point2 user1{-0.5, 0.0};
  Point2 user2{0.5, 0.0};
  Point2 relay{0.0, 0.0};
  double alpha = 2.0;
  double power = 10.0;
};

/// Which pathloss gains are tied together.
///  equal_pathloss:  relay links symmetric per user and g12 = g21
///  reciprocity:     relay links symmetric per user
///  uplink_downlink: both uplinks equal and both downlinks equal
enum class SymmetryMode { EqualPathloss, Reciprocity, UplinkDownlink };

const char* to_string(SymmetryMode m);
SymmetryMode symmetry_mode_from_string(std::string_view name);

/// Pathloss amplitudes d^(-alpha/2), same index convention as the Gaussian
/// gains. Unset entries keep the layout-derived value.
struct GainOverrides {
  std::optional<double> g12, g21, g1r, g2r, gr1, gr2;
};

struct ChannelPair {
  GaussianTwrcChannel gaussian;
  FadingTwrcChannel fading;
};

/// GeometryError when two nodes coincide or the resulting gains break the
/// mode's ties (relative tolerance 1e-12).
ChannelPair layout_to_gains(const NodeLayout& layout, SymmetryMode mode,
                            const GainOverrides& overrides = {});

struct ClassificationCell {
  double x = 0.0;
  double y = 0.0;
  bool same_region_gaussian = false;
  bool same_sumrate_gaussian = false;
  bool same_region_fading = false;
  bool same_sumrate_fading = false;
  bool undetermined = false;
  std::string note;  // why the cell is undetermined
};

/// Sweeps either the relay position (x, y) or, with `gain_pair`, the squared
/// direct-link gains (g12^2, g21^2) with the relay gains fixed by
/// `overrides`.
struct SweepConfig {
  SymmetryMode mode = SymmetryMode::EqualPathloss;
  bool gain_pair = false;
  NodeLayout layout;
  GainOverrides overrides;
  double x_min = -1.5;
  double x_max = 1.5;
  double y_min = -1.5;
  double y_max = 1.5;
  double step = 0.05;
  // 0 picks the hardware concurrency.
  unsigned threads = 0;
};

ClassificationCell classify(double x, double y, const SweepConfig& config);

/// Row-major over y (outer) then x; order does not depend on threads.
std::vector<ClassificationCell> sweep(const SweepConfig& config);

std::string map_to_csv(const std::vector<ClassificationCell>& cells,
                       bool gain_pair);

}  // namespace relay
