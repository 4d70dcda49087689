// Runs every acceptance criterion and prints one PASS/FAIL line for each.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "relay_rates/dmc_schemes.hpp"
#include "relay_rates/fading_twrc.hpp"
#include "relay_rates/gaussian_twrc.hpp"
#include "relay_rates/geometry_map.hpp"
#include "support.hpp"

using namespace relay;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

GaussianTwrcChannel make(const oracle::Gains& g) {
  GaussianTwrcChannel ch;
  ch.g12 = g.g12, ch.g1r = g.g1r, ch.g21 = g.g21, ch.g2r = g.g2r;
  ch.gr1 = g.gr1, ch.gr2 = g.gr2, ch.power = g.P;
  return ch;
}

const oracle::Gains kFig3{0.1, 2, 0.1, 0.5, 2, 0.5, 20};
const oracle::Gains kFig4{0.1, 2, 0.1, 0.5, 0.5, 2, 20};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Verdict fig3() {
  const auto ch = make(kFig3);
  const RegionBoundary o = region(ch, Scheme::CfOriginal);
  const RegionBoundary b = region(ch, Scheme::CfNoBinning);
  const RegionBoundary n = region(ch, Scheme::Nnc);
  const double b_over_o = region_excess(b, o), o_over_b = region_excess(o, b);
  const double n_over_b = region_excess(n, b), b_over_n = region_excess(b, n);
  const bool predicate = check_same_region_nnc(ch);
  Verdict v;
  v.pass = b_over_o > 1e-4 && o_over_b <= 1e-9 && n_over_b > 1e-4 && b_over_n <= 1e-9 &&
           !predicate;
  v.detail = fmt("nobinning beyond original %.4g, original beyond nobinning %.2g, "
                 "nnc beyond nobinning %.4g, nobinning beyond nnc %.2g, predicate %s",
                 b_over_o, o_over_b, n_over_b, b_over_n, predicate ? "true" : "false");
  return v;
}

Verdict fig4() {
  const auto ch = make(kFig4);
  const RegionBoundary o = region(ch, Scheme::CfOriginal);
  const RegionBoundary b = region(ch, Scheme::CfNoBinning);
  const RegionBoundary n = region(ch, Scheme::Nnc);
  // Both frontiers are sampled on the same variances, so the two-sided
  // excess is a pointwise comparison.
  const double pointwise = std::max(region_excess(b, n), region_excess(n, b));
  const double b_over_o = region_excess(b, o), o_over_b = region_excess(o, b);
  const bool predicate = check_same_region_nnc(ch);
  Verdict v;
  v.pass = pointwise <= 1e-6 && predicate && b_over_o > 1e-9 && o_over_b <= 1e-9;
  v.detail = fmt("nobinning vs nnc %.2g, nobinning beyond original %.4g, original beyond "
                 "nobinning %.2g, predicate %s",
                 pointwise, b_over_o, o_over_b, predicate ? "true" : "false");
  return v;
}

Verdict sumrate_sweep() {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    oracle::Gains g = kFig3;
    g.P = 1.0 + 99.0 * i / 19.0;
    const auto ch = make(g);
    worst = std::max(worst, std::abs(sumrate_cf_nobinning(ch).sumrate -
                                     optimal_sigma_nnc(ch).sumrate));
  }
  return {worst <= 1e-6, fmt("20 powers in [1, 100], largest difference %.3g bits", worst)};
}

Verdict kkt_oracle() {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  int bad = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto g = oracle::random_gains(rng);
    const double closed = optimal_sigma_nnc(make(g)).sumrate;
    const double best =
        oracle::maximize([&](double s) { return oracle::sum_rate(g, s); }, 1e-8, 1e8).value;
    const double d = std::abs(closed - best);
    worst = std::max(worst, d);
    bad += d > 1e-6;
  }
  return {bad == 0, fmt("1000 channels, largest difference %.3g bits, %d above 1e-6", worst, bad)};
}

Verdict one_way() {
  std::mt19937_64 rng(77);
  double worst = 0.0, slack = INFINITY;
  for (int k = 0; k < 200; ++k) {
    const auto t = oracle::random_one_way(rng);
    const OneWayDistribution d(to_pmf(t));
    const double nb = oneway_achievable_rate(oneway_cf_nobinning(d), d);
    const double orig = oneway_achievable_rate(oneway_cf_original(d).min_form, d);
    worst = std::max(worst, std::abs(nb - orig));
    const double lhs = oracle::cmi(t, {"yhat"}, {"yr"}, {"xr", "y"});
    const double rhs =
        oracle::cmi(t, {"yhat"}, {"yr"}, {"xr"}) - oracle::cmi(t, {"yhat"}, {"x", "y"}, {"xr"});
    slack = std::min(slack, lhs - rhs);
  }
  return {worst <= 1e-10 && slack >= -1e-10,
          fmt("200 distributions, largest rate difference %.3g, smallest inequality slack %.3g",
              worst, slack)};
}

Verdict nesting() {
  std::mt19937_64 rng(78);
  constexpr double tol = 1e-9;
  int violations = 0;
  double worst = -INFINITY;
  auto le = [&](double a, double b) {
    worst = std::max(worst, a - b);
    if (a > b + tol) ++violations;
  };
  for (int k = 0; k < 100; ++k) {
    const TwoWayDistribution d(to_pmf(oracle::random_two_way(rng)));
    const SchemeRates o = twrc_cf_original(d), b = twrc_cf_nobinning(d), n = twrc_nnc(d);
    const SchemeRates c1 = twrc_relaxed_norepeat(d), c2 = twrc_relaxed_repeat2(d);
    if (o.feasible && !b.feasible) ++violations;
    le(o.r1_bound, b.r1_bound);
    le(o.r2_bound, b.r2_bound);
    le(b.r1_bound, n.r1_bound);
    le(b.r2_bound, n.r2_bound);
    le(c1.r1_bound, c2.r1_bound);
    le(c1.r2_bound, c2.r2_bound);
    le(c2.r1_bound, n.r1_bound);
    le(c2.r2_bound, n.r2_bound);
    const SimultaneousBounds s = twrc_simultaneous_bounds(d);
    le(s.effective_all_blocks, s.effective_skip_last_index);
    le(s.effective_skip_last_index, s.nnc_r2);
  }
  return {violations == 0,
          fmt("100 distributions, %d violations, largest excess %.3g bits", violations, worst)};
}

Verdict fading_numerics() {
  double quad = 0.0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const double lu = std::pow(10.0, -3.0 + 6.0 * i / 9.0);
      const double lv = std::pow(10.0, -3.0 + 6.0 * j / 9.0);
      const double closed = ergodic_log_sum({lu, lv});
      quad = std::max(quad, std::abs(closed - ergodic_log_sum_quadrature({lu, lv})));
      quad = std::max(quad, std::abs(closed - oracle::ergodic_log_sum(lu, lv)));
    }
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> dist(0.2, 2.0), alpha(2.0, 4.0), lp(0.0, std::log(100.0)),
      ls(std::log(0.1), std::log(10.0));
  double worst_z = 0.0;
  int outside = 0;
  for (int k = 0; k < 20; ++k) {
    oracle::FadingGeometry g{dist(rng), dist(rng), dist(rng), alpha(rng), std::exp(lp(rng))};
    const double s = std::exp(ls(rng));
    FadingTwrcChannel ch;
    ch.d12 = g.d12, ch.d1r = g.d1r, ch.d2r = g.d2r, ch.alpha = g.alpha, ch.power = g.P;
    const FadingRateTuple r = fading_rate_tuple(ch, s);
    const auto sim = oracle::simulate(g, s, 1'000'000, 5000 + k);
    const double closed[6] = {r.rbar11, r.rbar12, r.rbar21, r.rbar22, r.f1, r.f2};
    for (int m = 0; m < 6; ++m) {
      const double z = std::abs(closed[m] - sim[m].mean) / sim[m].standard_error;
      worst_z = std::max(worst_z, z);
      outside += z > 3.0;
    }
  }
  return {quad <= 1e-8 && outside == 0,
          fmt("quadrature gap %.3g bits on 10x10 grid; 20 channels x 6 rates, largest |z| %.2f, "
              "%d beyond 3 SE",
              quad, worst_z, outside)};
}

Verdict fig5() {
  const auto cells = sweep(SweepConfig{});
  std::size_t undetermined = 0, determined = 0, sumrate_true = 0, not_contained = 0;
  for (const auto& c : cells) {
    if (c.undetermined) {
      ++undetermined;
      continue;
    }
    ++determined;
    sumrate_true += c.same_sumrate_gaussian;
    not_contained += c.same_region_gaussian && !c.same_region_fading;
  }
  const double frac = double(undetermined) / double(cells.size());
  return {sumrate_true == determined && not_contained == 0 && frac < 1e-3,
          fmt("%zu cells, %zu undetermined (%.3f%%), gaussian same-sum-rate %zu/%zu, gaussian "
              "same-region cells outside fading set %zu",
              cells.size(), undetermined, 100 * frac, sumrate_true, determined, not_contained)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

bool cli_idempotent(std::string& detail) {
  namespace fs = std::filesystem;
  const fs::path d = CLI_WORK_DIR;
  fs::create_directories(d);
  auto run = [&](const std::string& args, const fs::path& out) {
    const std::string cmd = std::string(RELAY_CLI) + " " + args + " --out " + out.string() +
                            " 2>" + (d / "stderr").string();
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) && WEXITSTATUS(st) == 0;
  };
  const std::string cases[] = {"reproduce fig3", "reproduce sumrate", "reproduce fig7",
                               "fading sumrate --monte-carlo --scenario " +
                                   std::string(SCENARIO_DIR) + "/fading_symmetric.json"};
  int same = 0, total = 0;
  for (const auto& c : cases) {
    ++total;
    const fs::path a = d / "a.out", b = d / "b.out";
    if (run(c, a) && run(c, b) && slurp(a) == slurp(b) && !slurp(a).empty()) ++same;
  }
  detail = fmt("CLI repeats identical %d/%d", same, total);
  return same == total;
}

Verdict properties() {
  std::mt19937_64 rng(80);
  int mono = 0, ident = 0, frontier = 0;
  for (int k = 0; k < 50; ++k) {
    const auto ch = make(oracle::random_gains(rng));
    RateTuple prev = rate_tuple(ch, 1e-4);
    for (double s = 1.1e-4; s < 1e4; s *= 1.1) {
      const RateTuple r = rate_tuple(ch, s);
      mono += r.r11 > prev.r11 || r.r21 > prev.r21 || r.r12 < prev.r12 || r.r22 < prev.r22;
      prev = r;
    }
    const SigmaThresholds t = thresholds(ch);
    const RateTuple a = rate_tuple(ch, t.e1), b = rate_tuple(ch, t.e2);
    ident += std::abs(a.r11 - a.r12) > 1e-12 * std::max(1.0, a.r11);
    ident += std::abs(b.r21 - b.r22) > 1e-12 * std::max(1.0, b.r21);
    for (Scheme sc : {Scheme::CfOriginal, Scheme::CfNoBinning, Scheme::Nnc}) {
      const RegionBoundary rb = region(ch, sc);
      for (std::size_t i = 1; i < rb.points.size(); ++i) {
        frontier += !(rb.points[i].r1 > rb.points[i - 1].r1) ||
                    !(rb.points[i].r2 < rb.points[i - 1].r2);
      }
    }
  }
  std::uniform_real_distribution<double> dist(0.2, 2.0);
  for (int k = 0; k < 20; ++k) {
    FadingTwrcChannel ch;
    ch.d12 = dist(rng), ch.d1r = dist(rng), ch.d2r = dist(rng), ch.power = 10;
    FadingRateTuple prev = fading_rate_tuple(ch, 1e-3);
    for (double s = 1.3e-3; s < 1e3; s *= 1.3) {
      const FadingRateTuple r = fading_rate_tuple(ch, s);
      mono += r.rbar11 > prev.rbar11 + 1e-15 || r.rbar21 > prev.rbar21 + 1e-15 ||
              r.rbar12 < prev.rbar12 - 1e-15 || r.rbar22 < prev.rbar22 - 1e-15;
      prev = r;
    }
    const FadingThresholds t = fading_thresholds(ch);
    const FadingRateTuple a = fading_rate_tuple(ch, t.e1bar);
    ident += std::abs(a.rbar11 - a.rbar12) > 1e-8;
    for (Scheme sc : {Scheme::CfNoBinning, Scheme::Nnc}) {
      const RegionBoundary rb = fading_region(ch, sc);
      for (std::size_t i = 1; i < rb.points.size(); ++i) {
        frontier += !(rb.points[i].r1 > rb.points[i - 1].r1) ||
                    !(rb.points[i].r2 < rb.points[i - 1].r2);
      }
    }
  }
  std::string cli;
  const bool idem = cli_idempotent(cli);
  return {mono == 0 && ident == 0 && frontier == 0 && idem,
          fmt("monotonicity violations %d, threshold identity misses %d, frontier order "
              "violations %d, %s",
              mono, ident, frontier, cli.c_str())};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 when untimed
    std::function<Verdict()> run;
  };
  const Criterion criteria[] = {
      {1, "fig3 containment", 5, fig3},
      {2, "fig4 equality", 5, fig4},
      {3, "sum-rate sweep", 10, sumrate_sweep},
      {4, "closed-form optimum vs oracle", 60, kkt_oracle},
      {5, "one-way equivalence", 0, one_way},
      {6, "dmc nesting", 0, nesting},
      {7, "fading numerics", 120, fading_numerics},
      {8, "fig5 map", 600, fig5},
      {9, "property suites", 0, properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_s == 0 || secs < c.limit_s;
    const bool pass = v.pass && in_time;
    failed += !pass;
    std::printf("%s %d %s (%.2f s%s): %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                in_time ? "" : ", over time limit", v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
