#include "relay_rates/region.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "relay_rates/errors.hpp"

namespace relay {

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::CfOriginal: return "cf_original";
    case Scheme::CfNoBinning: return "cf_nobinning";
    case Scheme::Nnc: return "nnc";
  }
  return "?";
}

Scheme scheme_from_string(std::string_view name) {
  for (Scheme s : {Scheme::CfOriginal, Scheme::CfNoBinning, Scheme::Nnc}) {
    if (name == to_string(s)) return s;
  }
  throw NameError("unknown scheme '" + std::string(name) + "'");
}

std::vector<double> sigma_grid(double lo, double hi, std::size_t points,
                               std::span<const double> extra) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2) {
    throw ArgumentError("sigma grid needs 0 < lo < hi and at least 2 points");
  }
  std::vector<double> grid;
  grid.reserve(points + extra.size());
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / double(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    grid.push_back(std::exp(a + step * double(i)));
  }
  grid.front() = lo;
  grid.back() = hi;
  for (double x : extra) {
    if (std::isfinite(x) && x >= lo && x <= hi) grid.push_back(x);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<RegionPoint> pareto_frontier(std::vector<RegionPoint> points) {
  // Sort by r1 descending (ties: r2 descending) and keep points that raise
  // the best r2 seen so far.
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
    if (a.r1 != b.r1) return a.r1 > b.r1;
    if (a.r2 != b.r2) return a.r2 > b.r2;
    return a.sigma2 < b.sigma2;
  });
  std::vector<RegionPoint> kept;
  for (const auto& p : points) {
    if (kept.empty() || p.r2 > kept.back().r2) kept.push_back(p);
  }
  std::reverse(kept.begin(), kept.end());
  return kept;
}

RegionBoundary sweep_region(const std::function<RegionPoint(double)>& rates,
                            std::span<const double> grid, double lower_bound,
                            std::string scheme) {
  RegionBoundary out;
  out.scheme = std::move(scheme);
  std::vector<RegionPoint> pts;
  for (double s : grid) {
    if (!(s > 0.0) || s < lower_bound) continue;
    out.sweep.push_back(s);
    pts.push_back(rates(s));
  }
  if (pts.empty()) {
    throw EmptyRegion("no admissible compression variance for " + out.scheme);
  }
  out.points = pareto_frontier(std::move(pts));
  return out;
}

double region_excess(const RegionBoundary& outer, const RegionBoundary& inner) {
  double worst = 0.0;
  for (const auto& p : outer.points) {
    // L-inf distance from p to the union of rectangles [0,q.r1]x[0,q.r2].
    double best = std::max(p.r1, p.r2);
    for (const auto& q : inner.points) {
      const double d = std::max(std::max(0.0, p.r1 - q.r1),
                                std::max(0.0, p.r2 - q.r2));
      best = std::min(best, d);
      if (best == 0.0) break;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

std::string region_to_csv(std::span<const RegionBoundary> regions) {
  std::ostringstream os;
  os << "sigma2,R1,R2,scheme\n";
  char buf[128];
  for (const auto& r : regions) {
    for (const auto& p : r.points) {
      std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,", p.sigma2, p.r1,
                    p.r2);
      os << buf << r.scheme << '\n';
    }
  }
  return os.str();
}

double sum_rate_optimal_sigma(const SumRateBranchInput& in) {
  const double g = in.g;
  auto clamp_to = [&](double lower) {
    if (g > in.e1 || g <= 0.0) return in.e1;
    if (g < lower) return lower;
    return g;
  };
  const double n1 = clamp_to(in.e2);
  if (in.z1 <= in.e2) return n1;
  const double n2 = clamp_to(in.z1);
  return in.r21(in.e2) <= in.r12(n2) + in.r21(n2) ? n2 : in.e2;
}

}  // namespace relay
