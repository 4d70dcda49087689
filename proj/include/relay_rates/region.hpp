#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace relay {

enum class Scheme { CfOriginal, CfNoBinning, Nnc };

const char* to_string(Scheme s);
Scheme scheme_from_string(std::string_view name);  // NameError when unknown

struct RegionPoint {
  double sigma2 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
};

/// Pareto frontier swept over the compression-noise variance: points sorted
/// by r1 ascending with r2 non-increasing, nothing dominated.
struct RegionBoundary {
  std::string scheme;
  std::vector<RegionPoint> points;
  std::vector<double> sweep;  // every admissible sigma^2 evaluated
};

/// Log-spaced sweep. Bounds default to the owning module's choice.
struct GridSpec {
  std::size_t points = 2000;
  std::optional<double> lo;
  std::optional<double> hi;
};

/// `points` log-spaced values on [lo, hi] merged with the finite values of
/// `extra` that fall inside, sorted and de-duplicated.
std::vector<double> sigma_grid(double lo, double hi, std::size_t points,
                               std::span<const double> extra);

std::vector<RegionPoint> pareto_frontier(std::vector<RegionPoint> points);

/// Evaluates `rates(sigma2)` (returning the clamped pair in r1/r2) on every
/// grid value >= lower_bound and keeps the frontier. EmptyRegion when no
/// grid value is admissible.
RegionBoundary sweep_region(
    const std::function<RegionPoint(double)>& rates,
    std::span<const double> grid, double lower_bound, std::string scheme);

/// How far `outer` sticks out of the region dominated by `inner`: the largest
/// L-infinity distance from an outer frontier point to the union of the
/// rectangles [0, r1] x [0, r2] spanned by inner points. Zero iff contained.
double region_excess(const RegionBoundary& outer, const RegionBoundary& inner);

/// CSV with header `sigma2,R1,R2,scheme`, 12 significant digits.
std::string region_to_csv(std::span<const RegionBoundary> regions);

/// Best sum rate and the variance achieving it.
struct SumRateOptimum {
  double sigma2 = 0.0;
  double sumrate = 0.0;
};

/// The closed-form choice of compression variance maximizing the sum rate
/// when the relay may compress arbitrarily finely. Users are labeled so that
/// e1 >= e2. `g` is the stationary point of r12 + r21 (+inf or <= 0 when it
/// does not exist), `z1` is where r12 crosses zero.
struct SumRateBranchInput {
  double e1 = 0.0;
  double e2 = 0.0;
  double z1 = 0.0;
  double g = 0.0;
  std::function<double(double)> r12;
  std::function<double(double)> r21;
};

double sum_rate_optimal_sigma(const SumRateBranchInput& in);

}  // namespace relay
