#pragma once

#include "oracles.hpp"
#include "relay_rates/info_core.hpp"

inline relay::JointPmf to_pmf(const oracle::Table& t) {
  std::vector<relay::Axis> axes;
  for (const auto& [name, size] : t.axes) axes.push_back({name, size});
  return relay::JointPmf(std::move(axes), t.probs);
}
