#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "relay_rates/relay_rates.h"

namespace cli {

using nlohmann::json;

// Bad scenario content; reported with exit code 2.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

json load_scenario(const std::string& path);

/// Checks the model tag and the model-specific fields, filling defaults.
/// The returned document is the scenario as it will be run (it is echoed
/// into the manifest).
json normalize(const json& scenario, const std::string& expected_model);

rr_gaussian_channel gaussian_channel(const json& channel);
rr_fading_channel fading_channel(const json& channel);
rr_grid grid_of(const json& scenario);
std::vector<rr_scheme> schemes_of(const json& scenario);
rr_sweep_config sweep_config(const json& sweep);

struct PowerSweep {
  double min = 1.0;
  double max = 100.0;
  std::size_t points = 20;
};
PowerSweep power_sweep(const json& scenario);

}  // namespace cli
