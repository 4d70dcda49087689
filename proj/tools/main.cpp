#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scenario.hpp"

using cli::json;
using cli::ValidationError;

namespace {

// A failed library call, carried up to main for the exit code.
struct LibraryFailure {
  rr_status status;
  std::string message;
};

void check(rr_status s) {
  if (s != RR_OK) throw LibraryFailure{s, rr_last_error()};
}

std::string take(char* s) {
  std::string out(s);
  rr_string_free(s);
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Options {
  std::string scenario;
  std::string out;
  bool validate_only = false;
  bool oracle = false;
  bool monte_carlo = false;
};

struct Output {
  std::string content;
  std::string default_format;
  json summary = json::object();
};

std::string format_of(const json& s, const std::string& fallback) {
  return s["output"].value("format", fallback);
}

json sum_rate_json(const rr_sum_rate& r) {
  return {{"sigma2", r.sigma2}, {"sumrate", r.sumrate}};
}

// ---- regions ----

struct RegionSet {
  std::vector<rr_region*> regions;
  RegionSet() = default;
  RegionSet(const RegionSet&) = delete;
  RegionSet& operator=(const RegionSet&) = delete;
  ~RegionSet() {
    for (auto* r : regions) rr_region_free(r);
  }
};

Output render_regions(const RegionSet& set, const json& s) {
  Output o;
  const std::string format = format_of(s, "csv");
  if (format == "csv") {
    char* csv = nullptr;
    check(rr_regions_to_csv(set.regions.data(), set.regions.size(), &csv));
    o.content = take(csv);
  } else {
    json doc{{"regions", json::array()}};
    for (const auto* r : set.regions) {
      json pts = json::array();
      for (std::size_t i = 0; i < rr_region_size(r); ++i) {
        double sigma2, r1, r2;
        check(rr_region_point(r, i, &sigma2, &r1, &r2));
        pts.push_back({sigma2, r1, r2});
      }
      doc["regions"].push_back({{"scheme", rr_region_scheme(r)}, {"points", pts}});
    }
    o.content = doc.dump(2) + "\n";
  }
  for (const auto* r : set.regions) {
    o.summary["frontier_points"][rr_region_scheme(r)] = rr_region_size(r);
  }
  return o;
}

template <class Channel, class RegionFn>
Output region_command(const json& s, const Channel& ch, RegionFn region_of) {
  const rr_grid grid = cli::grid_of(s);
  RegionSet set;
  for (rr_scheme scheme : cli::schemes_of(s)) {
    rr_region* r = nullptr;
    check(region_of(&ch, scheme, &grid, &r));
    set.regions.push_back(r);
  }
  return render_regions(set, s);
}

// ---- sum-rate oracle ----

// Grid search in log(sigma^2) followed by golden-section refinement around
// the best grid point.
rr_sum_rate oracle_maximum(const std::function<double(double)>& f, double lo,
                           double hi, std::size_t points) {
  const double a = std::log(lo), b = std::log(hi);
  auto at = [&](double t) { return f(std::exp(t)); };
  std::size_t best = 0;
  double best_value = -INFINITY;
  for (std::size_t i = 0; i < points; ++i) {
    const double v = at(a + (b - a) * double(i) / double(points - 1));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double step = (b - a) / double(points - 1);
  double l = a + step * (double(best) - 1.0), r = a + step * (double(best) + 1.0);
  l = std::max(l, a);
  r = std::min(r, b);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = r - inv_phi * (r - l), x2 = l + inv_phi * (r - l);
  double f1 = at(x1), f2 = at(x2);
  for (int it = 0; it < 200 && r - l > 1e-13; ++it) {
    if (f1 < f2) {
      l = x1;
      x1 = x2;
      f1 = f2;
      x2 = l + inv_phi * (r - l);
      f2 = at(x2);
    } else {
      r = x2;
      x2 = x1;
      f2 = f1;
      x1 = r - inv_phi * (r - l);
      f1 = at(x1);
    }
  }
  rr_sum_rate out{std::exp(a + step * double(best)), best_value};
  for (auto [t, v] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
    if (v > out.sumrate) out = {std::exp(t), v};
  }
  return out;
}

bool wants(const json& s, const std::string& scheme) {
  const auto& list = s["schemes"];
  return std::find(list.begin(), list.end(), scheme) != list.end();
}

// ---- gaussian ----

json gaussian_sumrates(const rr_gaussian_channel& ch, const json& s) {
  json out = json::object();
  rr_sum_rate r;
  if (wants(s, "nnc")) {
    check(rr_gaussian_optimal_sigma_nnc(&ch, &r));
    out["nnc"] = sum_rate_json(r);
  }
  if (wants(s, "cf_nobinning")) {
    check(rr_gaussian_sumrate_cf_nobinning(&ch, &r));
    out["cf_nobinning"] = sum_rate_json(r);
  }
  if (wants(s, "cf_original")) {
    check(rr_gaussian_sumrate_cf_original(&ch, &r));
    out["cf_original"] = sum_rate_json(r);
  }
  return out;
}

Output gaussian_sumrate(const json& s, const Options& opt) {
  Output o;
  if (!s["power_sweep"].is_null()) {
    const cli::PowerSweep sweep = cli::power_sweep(s);
    std::string csv = "P";
    for (const auto& name : s["schemes"]) csv += "," + name.get<std::string>();
    csv += "\n";
    json rows = json::array();
    for (std::size_t i = 0; i < sweep.points; ++i) {
      rr_gaussian_channel ch = cli::gaussian_channel(s["channel"]);
      ch.power = sweep.points == 1
                     ? sweep.min
                     : sweep.min + (sweep.max - sweep.min) * double(i) /
                                       double(sweep.points - 1);
      const json rates = gaussian_sumrates(ch, s);
      csv += fmt(ch.power);
      json row{{"P", ch.power}};
      for (const auto& name : s["schemes"]) {
        const double v = rates[name.get<std::string>()]["sumrate"];
        csv += "," + fmt(v);
        row[name.get<std::string>()] = v;
      }
      csv += "\n";
      rows.push_back(row);
    }
    o.content = format_of(s, "csv") == "csv" ? csv : json{{"sweep", rows}}.dump(2) + "\n";
    o.summary["power_points"] = sweep.points;
    return o;
  }

  const rr_gaussian_channel ch = cli::gaussian_channel(s["channel"]);
  json doc = gaussian_sumrates(ch, s);
  if (opt.oracle) {
    rr_sigma_thresholds t;
    check(rr_gaussian_thresholds(&ch, &t));
    auto f = [&](double sigma2) {
      double v;
      check(rr_gaussian_sum_rate_at(&ch, sigma2, &v));
      return v;
    };
    const std::size_t n = s["oracle"]["points"];
    const double top = std::max({t.e1, t.e2, t.r, t.c1, t.c2});
    double worst = 0.0;
    json oracle = json::object();
    if (doc.contains("nnc")) {
      const rr_sum_rate r = oracle_maximum(f, 1e-9, 100.0 * top + 1.0, n);
      oracle["nnc"] = sum_rate_json(r);
      worst = std::max(worst, std::abs(r.sumrate - doc["nnc"]["sumrate"].get<double>()));
    }
    if (doc.contains("cf_nobinning")) {
      const double lo = std::max({t.c1, t.c2, 1e-9});
      const rr_sum_rate r = oracle_maximum(f, lo, 100.0 * top + 1.0, n);
      oracle["cf_nobinning"] = sum_rate_json(r);
      worst = std::max(worst,
                       std::abs(r.sumrate - doc["cf_nobinning"]["sumrate"].get<double>()));
    }
    oracle["max_abs_difference"] = worst;
    doc["oracle"] = oracle;
  }
  o.content = doc.dump(2) + "\n";
  return o;
}

Output gaussian_check(const json& s) {
  const rr_gaussian_channel ch = cli::gaussian_channel(s["channel"]);
  rr_gaussian_checks c;
  check(rr_gaussian_check(&ch, &c));
  rr_sigma_thresholds t;
  check(rr_gaussian_thresholds(&ch, &t));
  const json doc{{"same_region_original", bool(c.same_region_original)},
                 {"same_region_nnc", bool(c.same_region_nnc)},
                 {"same_sumrate", bool(c.same_sumrate)},
                 {"thresholds",
                  {{"c1", t.c1}, {"c2", t.c2}, {"e1", t.e1}, {"e2", t.e2}, {"r", t.r}}}};
  return {doc.dump(2) + "\n", "json", {}};
}

// ---- fading ----

json tuple_json(const rr_fading_rate_tuple& r) {
  return {{"rbar11", r.rbar11}, {"rbar12", r.rbar12}, {"rbar21", r.rbar21},
          {"rbar22", r.rbar22}, {"f1", r.f1},         {"f2", r.f2},
          {"d1", r.d1}};
}

Output fading_sumrate(const json& s, const Options& opt) {
  const rr_fading_channel ch = cli::fading_channel(s["channel"]);
  json doc = json::object();
  rr_sum_rate r;
  if (wants(s, "nnc")) {
    check(rr_fading_optimal_sigma_nnc(&ch, &r));
    doc["nnc"] = sum_rate_json(r);
  }
  if (wants(s, "cf_nobinning")) {
    check(rr_fading_sumrate_cf_nobinning(&ch, &r));
    doc["cf_nobinning"] = sum_rate_json(r);
  }
  if (opt.oracle) {
    rr_fading_thresholds t;
    check(rr_fading_thresholds_of(&ch, &t));
    auto f = [&](double sigma2) {
      double v;
      check(rr_fading_sum_rate_at(&ch, sigma2, &v));
      return v;
    };
    const std::size_t n = s["oracle"]["points"];
    double top = std::max({t.c1bar, t.c2bar, t.e1bar, t.e2bar, t.nbar, 1.0});
    if (!std::isfinite(top)) top = 1e6;
    double worst = 0.0;
    json oracle = json::object();
    if (doc.contains("nnc")) {
      const rr_sum_rate o = oracle_maximum(f, 1e-9, 100.0 * top, n);
      oracle["nnc"] = sum_rate_json(o);
      worst = std::max(worst, std::abs(o.sumrate - doc["nnc"]["sumrate"].get<double>()));
    }
    if (doc.contains("cf_nobinning")) {
      const double lo = std::max({t.c1bar, t.c2bar, 1e-9});
      const rr_sum_rate o = oracle_maximum(f, lo, 100.0 * top, n);
      oracle["cf_nobinning"] = sum_rate_json(o);
      worst = std::max(worst,
                       std::abs(o.sumrate - doc["cf_nobinning"]["sumrate"].get<double>()));
    }
    oracle["max_abs_difference"] = worst;
    doc["oracle"] = oracle;
  }
  if (opt.monte_carlo) {
    const double sigma2 = s["monte_carlo"]["sigma2"];
    const std::size_t samples = s["monte_carlo"]["samples"];
    rr_fading_rate_tuple exact, mean, se;
    check(rr_fading_rates(&ch, sigma2, &exact));
    check(rr_fading_monte_carlo(&ch, sigma2, samples, s["seed"].get<std::uint64_t>(),
                                &mean, &se));
    doc["monte_carlo"] = {{"sigma2", sigma2},
                          {"samples", samples},
                          {"closed_form", tuple_json(exact)},
                          {"mean", tuple_json(mean)},
                          {"standard_error", tuple_json(se)}};
  }
  return {doc.dump(2) + "\n", "json", {}};
}

Output fading_check(const json& s) {
  const rr_fading_channel ch = cli::fading_channel(s["channel"]);
  rr_fading_checks c;
  check(rr_fading_check(&ch, &c));
  rr_fading_thresholds t;
  check(rr_fading_thresholds_of(&ch, &t));
  const json doc{{"same_region", bool(c.same_region)},
                 {"same_sumrate", bool(c.same_sumrate)},
                 {"thresholds",
                  {{"c1", t.c1bar},
                   {"c2", t.c2bar},
                   {"z1", t.z1bar},
                   {"e1", t.e1bar},
                   {"e2", t.e2bar},
                   {"g", t.gbar},
                   {"n", t.nbar}}}};
  return {doc.dump(2) + "\n", "json", {}};
}

// ---- geometry ----

Output geometry_map(const json& s) {
  const rr_sweep_config cfg = cli::sweep_config(s["sweep"]);
  rr_map* map = nullptr;
  check(rr_geometry_sweep(&cfg, &map));
  std::unique_ptr<rr_map, void (*)(rr_map*)> guard(map, rr_map_free);
  Output o;
  const std::size_t n = rr_map_size(map);
  std::size_t counts[4] = {0, 0, 0, 0};
  json cells = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    rr_map_cell c;
    check(rr_map_cell_at(map, i, &c));
    counts[0] += c.same_region_gaussian;
    counts[1] += c.same_sumrate_gaussian;
    counts[2] += c.same_region_fading;
    counts[3] += c.same_sumrate_fading;
    if (format_of(s, "csv") == "json") {
      cells.push_back({{"x", c.x},
                       {"y", c.y},
                       {"same_region_g", bool(c.same_region_gaussian)},
                       {"same_sumrate_g", bool(c.same_sumrate_gaussian)},
                       {"same_region_f", bool(c.same_region_fading)},
                       {"same_sumrate_f", bool(c.same_sumrate_fading)},
                       {"undetermined", bool(c.undetermined)}});
    }
  }
  if (format_of(s, "csv") == "csv") {
    char* csv = nullptr;
    check(rr_map_to_csv(map, &csv));
    o.content = take(csv);
  } else {
    o.content = json{{"cells", cells}}.dump(2) + "\n";
  }
  o.summary = {{"cells", n},
               {"undetermined", rr_map_undetermined_count(map)},
               {"same_region_g", counts[0]},
               {"same_sumrate_g", counts[1]},
               {"same_region_f", counts[2]},
               {"same_sumrate_f", counts[3]}};
  return o;
}

// ---- dmc ----

Output dmc_eval(const json& s) {
  json doc = s["pmf"];
  doc["model"] = s["model"];
  char* out = nullptr;
  check(rr_dmc_eval_json(doc.dump().c_str(), &out));
  return {json::parse(take(out)).dump(2) + "\n", "json", {}};
}

// ---- driver ----

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
  if (!f) throw std::runtime_error("failed writing " + path);
}

using Handler = std::function<Output(const json&, const Options&)>;

int run(const std::string& command, const std::string& model,
        const Options& opt, const Handler& handler) {
  const json scenario = cli::normalize(cli::load_scenario(opt.scenario), model);
  if (opt.validate_only) {
    std::cout << json{{"valid", true}}.dump() << "\n";
    return 0;
  }
  const Output result = handler(scenario, opt);
  const std::string path =
      !opt.out.empty() ? opt.out : scenario["output"].value("path", std::string());
  if (path.empty()) {
    std::cout << result.content;
    return 0;
  }
  write_file(path, result.content);
  const json manifest{{"command", command},
                      {"library_version", rr_version()},
                      {"scenario", scenario},
                      {"output", path},
                      {"summary", result.summary}};
  write_file(path + ".manifest.json", manifest.dump(2) + "\n");
  return 0;
}

void error_json(const json& doc) { std::cerr << doc.dump() << "\n"; }

int exit_code(rr_status s) {
  switch (s) {
    case RR_CONVERGENCE:
    case RR_EMPTY_REGION: return 3;
    case RR_INTERNAL: return 1;
    default: return 2;
  }
}

struct Reproduction {
  std::string command;
  std::string model;
  Handler handler;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compress-forward relay rate regions, sum rates and maps", "relay-rates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rr_version()));

  Options opt;
  std::function<int()> action;

  auto add_scenario = [&](CLI::App* sub) {
    sub->add_option("--scenario", opt.scenario, "scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "output path (overrides the scenario)");
    sub->add_flag("--validate-only", opt.validate_only,
                  "check the scenario without computing");
  };
  auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help,
                  const std::string& model, Handler handler) {
    CLI::App* sub = group->add_subcommand(name, help);
    add_scenario(sub);
    const std::string command = group->get_name() + " " + name;
    sub->callback([&, command, model, handler] {
      action = [&, command, model, handler] { return run(command, model, opt, handler); };
    });
    return sub;
  };
  auto ignore_opt = [](Output (*f)(const json&)) {
    return Handler([f](const json& s, const Options&) { return f(s); });
  };

  CLI::App* dmc = app.add_subcommand("dmc", "discrete memoryless relay channels");
  dmc->require_subcommand(1);
  leaf(dmc, "eval", "evaluate every scheme for a joint distribution", "dmc",
       ignore_opt(dmc_eval));

  CLI::App* gaussian = app.add_subcommand("gaussian", "Gaussian two-way relay channel");
  gaussian->require_subcommand(1);
  const Handler gaussian_region = [](const json& s, const Options&) {
    return region_command(s, cli::gaussian_channel(s["channel"]), rr_gaussian_region);
  };
  leaf(gaussian, "region", "frontiers of the selected schemes", "gaussian",
       gaussian_region);
  leaf(gaussian, "sumrate", "optimal sum rates", "gaussian", gaussian_sumrate)
      ->add_flag("--oracle", opt.oracle, "also maximize by grid and golden-section search");
  leaf(gaussian, "check", "region and sum-rate equality conditions", "gaussian",
       ignore_opt(gaussian_check));

  CLI::App* fading = app.add_subcommand("fading", "Rayleigh-fading two-way relay channel");
  fading->require_subcommand(1);
  const Handler fading_region = [](const json& s, const Options&) {
    return region_command(s, cli::fading_channel(s["channel"]), rr_fading_region);
  };
  leaf(fading, "region", "frontiers of the selected schemes", "fading", fading_region);
  CLI::App* fsum = leaf(fading, "sumrate", "optimal sum rates", "fading", fading_sumrate);
  fsum->add_flag("--oracle", opt.oracle, "also maximize by grid and golden-section search");
  fsum->add_flag("--monte-carlo", opt.monte_carlo,
                 "compare ergodic rates against simulation");
  leaf(fading, "check", "region and sum-rate equality conditions", "fading",
       ignore_opt(fading_check));

  CLI::App* geometry = app.add_subcommand("geometry", "relay placement maps");
  geometry->require_subcommand(1);
  leaf(geometry, "map", "classify a grid of relay positions or gain pairs", "geometry",
       ignore_opt(geometry_map));

  const std::map<std::string, Reproduction> recipes{
      {"fig3", {"gaussian region", "gaussian", gaussian_region}},
      {"fig4", {"gaussian region", "gaussian", gaussian_region}},
      {"sumrate", {"gaussian sumrate", "gaussian", gaussian_sumrate}},
      {"fig5", {"geometry map", "geometry", ignore_opt(geometry_map)}},
      {"fig6", {"geometry map", "geometry", ignore_opt(geometry_map)}},
      {"fig7", {"geometry map", "geometry", ignore_opt(geometry_map)}},
  };
  std::string figure;
  CLI::App* reproduce = app.add_subcommand("reproduce", "rerun a bundled figure scenario");
  std::vector<std::string> names;
  for (const auto& [k, v] : recipes) names.push_back(k);
  reproduce->add_option("name", figure, "figure dataset")
      ->required()
      ->check(CLI::IsMember(names));
  reproduce->add_option("--out", opt.out, "output path (overrides the scenario)");
  reproduce->add_flag("--validate-only", opt.validate_only,
                      "check the scenario without computing");
  reproduce->callback([&] {
    action = [&] {
      const Reproduction& r = recipes.at(figure);
      opt.scenario = std::string(RELAY_SCENARIO_DIR) + "/" + figure + ".json";
      return run("reproduce " + figure, r.model, opt, r.handler);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    error_json({{"error", "usage"}, {"message", e.what()}});
    return 2;
  }

  try {
    return action();
  } catch (const ValidationError& e) {
    error_json({{"error", "validation"}, {"where", e.where()}, {"message", e.what()}});
    return 2;
  } catch (const LibraryFailure& e) {
    error_json({{"error", rr_status_name(e.status)}, {"message", e.message}});
    return exit_code(e.status);
  } catch (const std::exception& e) {
    error_json({{"error", "internal"}, {"message", e.what()}});
    return 1;
  }
}
