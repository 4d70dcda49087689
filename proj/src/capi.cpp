#include "relay_rates/relay_rates.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "relay_rates/dmc_schemes.hpp"
#include "relay_rates/errors.hpp"
#include "relay_rates/fading_twrc.hpp"
#include "relay_rates/gaussian_twrc.hpp"
#include "relay_rates/geometry_map.hpp"
#include "relay_rates/info_core.hpp"

struct rr_pmf {
  relay::JointPmf pmf;
};

struct rr_region {
  relay::RegionBoundary boundary;
};

struct rr_map {
  std::vector<relay::ClassificationCell> cells;
  bool gain_pair = false;
};

namespace {

thread_local std::string last_error;

rr_status status_of(relay::ErrorKind k) {
  using relay::ErrorKind;
  switch (k) {
    case ErrorKind::Argument: return RR_ARGUMENT;
    case ErrorKind::Name: return RR_NAME;
    case ErrorKind::Normalization: return RR_NORMALIZATION;
    case ErrorKind::Size: return RR_SIZE;
    case ErrorKind::Factorization: return RR_FACTORIZATION;
    case ErrorKind::Domain: return RR_DOMAIN;
    case ErrorKind::DegenerateChannel: return RR_DEGENERATE_CHANNEL;
    case ErrorKind::EmptyRegion: return RR_EMPTY_REGION;
    case ErrorKind::Convergence: return RR_CONVERGENCE;
    case ErrorKind::Geometry: return RR_GEOMETRY;
    case ErrorKind::Parse: return RR_PARSE;
  }
  return RR_INTERNAL;
}

template <class F>
rr_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return RR_OK;
  } catch (const relay::ConvergenceError& e) {
    last_error = std::string(e.what()) + " [bracket " + std::to_string(e.lo()) +
                 ", " + std::to_string(e.hi()) + "; f = " +
                 std::to_string(e.f_lo()) + ", " + std::to_string(e.f_hi()) +
                 "]";
    return RR_CONVERGENCE;
  } catch (const relay::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return RR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) {
    throw relay::ArgumentError(std::string(what) + " must not be NULL");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

relay::VarSet vars(const char* csv) {
  return csv == nullptr ? relay::VarSet{} : relay::VarSet::parse(csv);
}

relay::GaussianTwrcChannel to_cpp(const rr_gaussian_channel* c) {
  require(c, "channel");
  relay::GaussianTwrcChannel ch{c->g12, c->g1r, c->g21, c->g2r,
                                c->gr1, c->gr2, c->power};
  ch.validate();
  return ch;
}

relay::FadingTwrcChannel to_cpp(const rr_fading_channel* c) {
  require(c, "channel");
  relay::FadingTwrcChannel ch;
  ch.d12 = c->d12;
  ch.d1r = c->d1r;
  ch.d2r = c->d2r;
  ch.alpha = c->alpha;
  ch.power = c->power;
  ch.moments = {c->h12, c->h21, c->h1r, c->h2r, c->hr1, c->hr2};
  ch.validate();
  return ch;
}

rr_fading_channel to_c(const relay::FadingTwrcChannel& ch) {
  const relay::FadingMoments& m = ch.moments;
  return {ch.d12, ch.d1r, ch.d2r, ch.alpha, ch.power,
          m.h12,  m.h21,  m.h1r,  m.h2r,    m.hr1,    m.hr2};
}

rr_fading_rate_tuple to_c(const relay::FadingRateTuple& r) {
  return {r.rbar11, r.rbar12, r.rbar21, r.rbar22, r.f1, r.f2, r.d1};
}

relay::GridSpec to_cpp(const rr_grid* g) {
  relay::GridSpec spec;
  if (g == nullptr) return spec;
  if (g->points > 0) spec.points = g->points;
  if (g->lo > 0.0) spec.lo = g->lo;
  if (g->hi > 0.0) spec.hi = g->hi;
  return spec;
}

relay::Scheme to_cpp(rr_scheme s) {
  switch (s) {
    case RR_CF_ORIGINAL: return relay::Scheme::CfOriginal;
    case RR_CF_NOBINNING: return relay::Scheme::CfNoBinning;
    case RR_NNC: return relay::Scheme::Nnc;
  }
  throw relay::ArgumentError("unknown scheme code");
}

std::optional<double> maybe(double v) {
  return std::isnan(v) ? std::nullopt : std::optional<double>(v);
}

relay::SweepConfig to_cpp(const rr_sweep_config* c) {
  require(c, "sweep config");
  relay::SweepConfig cfg;
  switch (c->mode) {
    case RR_EQUAL_PATHLOSS: cfg.mode = relay::SymmetryMode::EqualPathloss; break;
    case RR_RECIPROCITY: cfg.mode = relay::SymmetryMode::Reciprocity; break;
    case RR_UPLINK_DOWNLINK:
      cfg.mode = relay::SymmetryMode::UplinkDownlink;
      break;
    default: throw relay::ArgumentError("unknown symmetry mode code");
  }
  cfg.gain_pair = c->gain_pair != 0;
  cfg.layout.user1 = {c->user1_x, c->user1_y};
  cfg.layout.user2 = {c->user2_x, c->user2_y};
  cfg.layout.relay = {c->relay_x, c->relay_y};
  cfg.layout.alpha = c->alpha;
  cfg.layout.power = c->power;
  cfg.overrides = {maybe(c->g12), maybe(c->g21), maybe(c->g1r),
                   maybe(c->g2r), maybe(c->gr1), maybe(c->gr2)};
  cfg.x_min = c->x_min;
  cfg.x_max = c->x_max;
  cfg.y_min = c->y_min;
  cfg.y_max = c->y_max;
  cfg.step = c->step;
  cfg.threads = c->threads;
  return cfg;
}

void emit(rr_sum_rate* out, relay::SumRateOptimum o) {
  require(out, "output");
  *out = {o.sigma2, o.sumrate};
}

}  // namespace

extern "C" {

const char* rr_last_error(void) { return last_error.c_str(); }

const char* rr_status_name(rr_status status) {
  switch (status) {
    case RR_OK: return "OK";
    case RR_ARGUMENT: return "ArgumentError";
    case RR_NAME: return "NameError";
    case RR_NORMALIZATION: return "NormalizationError";
    case RR_SIZE: return "SizeError";
    case RR_FACTORIZATION: return "FactorizationError";
    case RR_DOMAIN: return "DomainError";
    case RR_DEGENERATE_CHANNEL: return "DegenerateChannelError";
    case RR_EMPTY_REGION: return "EmptyRegion";
    case RR_CONVERGENCE: return "ConvergenceError";
    case RR_GEOMETRY: return "GeometryError";
    case RR_PARSE: return "ParseError";
    case RR_INTERNAL: return "InternalError";
  }
  return "UnknownStatus";
}

const char* rr_version(void) { return "0.1.0"; }

void rr_string_free(char* s) { std::free(s); }

rr_status rr_pmf_from_json(const char* json, rr_pmf** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "output");
    *out = new rr_pmf{relay::pmf_from_json(json)};
  });
}

void rr_pmf_free(rr_pmf* pmf) { delete pmf; }

rr_status rr_pmf_entropy(const rr_pmf* pmf, const char* v, double* out) {
  return guarded([&] {
    require(pmf, "pmf");
    require(out, "output");
    *out = relay::entropy(pmf->pmf, vars(v));
  });
}

rr_status rr_pmf_cmi(const rr_pmf* pmf, const char* a, const char* b,
                     const char* c, double* out) {
  return guarded([&] {
    require(pmf, "pmf");
    require(out, "output");
    *out = relay::conditional_mutual_information(pmf->pmf, vars(a), vars(b),
                                                 vars(c));
  });
}

rr_status rr_dmc_eval_json(const char* json, char** out_json) {
  return guarded([&] {
    require(json, "json");
    require(out_json, "output");
    *out_json = dup_string(relay::evaluate_dmc_json(json));
  });
}

size_t rr_region_size(const rr_region* r) {
  return r ? r->boundary.points.size() : 0;
}

rr_status rr_region_point(const rr_region* r, size_t i, double* sigma2,
                          double* r1, double* r2) {
  return guarded([&] {
    require(r, "region");
    if (i >= r->boundary.points.size()) {
      throw relay::ArgumentError("region point index out of range");
    }
    const relay::RegionPoint& p = r->boundary.points[i];
    if (sigma2) *sigma2 = p.sigma2;
    if (r1) *r1 = p.r1;
    if (r2) *r2 = p.r2;
  });
}

const char* rr_region_scheme(const rr_region* r) {
  return r ? r->boundary.scheme.c_str() : "";
}

size_t rr_region_sweep_size(const rr_region* r) {
  return r ? r->boundary.sweep.size() : 0;
}

rr_status rr_region_excess(const rr_region* outer, const rr_region* inner,
                           double* out) {
  return guarded([&] {
    require(outer, "outer region");
    require(inner, "inner region");
    require(out, "output");
    *out = relay::region_excess(outer->boundary, inner->boundary);
  });
}

rr_status rr_regions_to_csv(const rr_region* const* regions, size_t count,
                            char** out_csv) {
  return guarded([&] {
    require(out_csv, "output");
    if (count > 0) require(regions, "regions");
    std::vector<relay::RegionBoundary> all;
    for (size_t i = 0; i < count; ++i) {
      require(regions[i], "region");
      all.push_back(regions[i]->boundary);
    }
    *out_csv = dup_string(relay::region_to_csv(all));
  });
}

void rr_region_free(rr_region* r) { delete r; }

rr_status rr_capacity(double snr, double* out) {
  return guarded([&] {
    require(out, "output");
    *out = relay::capacity(snr);
  });
}

rr_status rr_gaussian_rate_tuple(const rr_gaussian_channel* ch, double sigma2,
                                 rr_rate_tuple* out) {
  return guarded([&] {
    require(out, "output");
    const relay::RateTuple r = relay::rate_tuple(to_cpp(ch), sigma2);
    *out = {r.r11, r.r12, r.r21, r.r22};
  });
}

rr_status rr_gaussian_thresholds(const rr_gaussian_channel* ch,
                                 rr_sigma_thresholds* out) {
  return guarded([&] {
    require(out, "output");
    const relay::SigmaThresholds t = relay::thresholds(to_cpp(ch));
    *out = {t.c1, t.c2, t.e1, t.e2, t.r};
  });
}

rr_status rr_gaussian_sum_rate_at(const rr_gaussian_channel* ch, double sigma2,
                                  double* out) {
  return guarded([&] {
    require(out, "output");
    *out = relay::sum_rate(to_cpp(ch), sigma2);
  });
}

rr_status rr_gaussian_region(const rr_gaussian_channel* ch, rr_scheme scheme,
                             const rr_grid* grid, rr_region** out) {
  return guarded([&] {
    require(out, "output");
    *out = new rr_region{relay::region(to_cpp(ch), to_cpp(scheme), to_cpp(grid))};
  });
}

rr_status rr_gaussian_optimal_sigma_nnc(const rr_gaussian_channel* ch,
                                        rr_sum_rate* out) {
  return guarded([&] { emit(out, relay::optimal_sigma_nnc(to_cpp(ch))); });
}

rr_status rr_gaussian_sumrate_cf_nobinning(const rr_gaussian_channel* ch,
                                           rr_sum_rate* out) {
  return guarded([&] { emit(out, relay::sumrate_cf_nobinning(to_cpp(ch))); });
}

rr_status rr_gaussian_sumrate_cf_original(const rr_gaussian_channel* ch,
                                          rr_sum_rate* out) {
  return guarded([&] { emit(out, relay::sumrate_cf_original(to_cpp(ch))); });
}

rr_status rr_gaussian_check(const rr_gaussian_channel* ch,
                            rr_gaussian_checks* out) {
  return guarded([&] {
    require(out, "output");
    const relay::GaussianTwrcChannel c = to_cpp(ch);
    *out = {relay::check_same_region_original(c),
            relay::check_same_region_nnc(c), relay::check_same_sumrate(c)};
  });
}

rr_status rr_ergodic_log_single(double lambda, double* out) {
  return guarded([&] {
    require(out, "output");
    *out = relay::ergodic_log_single(lambda);
  });
}

rr_status rr_ergodic_log_sum(double lambda_u, double lambda_v, double* out) {
  return guarded([&] {
    require(out, "output");
    *out = relay::ergodic_log_sum({lambda_u, lambda_v});
  });
}

rr_status rr_fading_rates(const rr_fading_channel* ch, double sigma2,
                               rr_fading_rate_tuple* out) {
  return guarded([&] {
    require(out, "output");
    *out = to_c(relay::fading_rate_tuple(to_cpp(ch), sigma2));
  });
}

rr_status rr_fading_rates_quadrature(const rr_fading_channel* ch,
                                          double sigma2,
                                          rr_fading_rate_tuple* out) {
  return guarded([&] {
    require(out, "output");
    *out = to_c(relay::fading_rate_tuple_quadrature(to_cpp(ch), sigma2));
  });
}

rr_status rr_fading_monte_carlo(const rr_fading_channel* ch, double sigma2,
                                size_t samples, uint64_t seed,
                                rr_fading_rate_tuple* mean,
                                rr_fading_rate_tuple* standard_error) {
  return guarded([&] {
    require(mean, "mean output");
    const relay::MonteCarloRates mc =
        relay::fading_rate_tuple_monte_carlo(to_cpp(ch), sigma2, samples, seed);
    *mean = to_c(mc.mean);
    if (standard_error) *standard_error = to_c(mc.standard_error);
  });
}

rr_status rr_fading_thresholds_of(const rr_fading_channel* ch,
                                  rr_fading_thresholds* out) {
  return guarded([&] {
    require(out, "output");
    const relay::FadingThresholds t = relay::fading_thresholds(to_cpp(ch));
    *out = {t.c1bar, t.c2bar, t.z1bar, t.e1bar, t.e2bar, t.gbar, t.nbar};
  });
}

rr_status rr_fading_sum_rate_at(const rr_fading_channel* ch, double sigma2,
                                double* out) {
  return guarded([&] {
    require(out, "output");
    *out = relay::fading_sum_rate(to_cpp(ch), sigma2);
  });
}

rr_status rr_fading_region(const rr_fading_channel* ch, rr_scheme scheme,
                           const rr_grid* grid, rr_region** out) {
  return guarded([&] {
    require(out, "output");
    *out = new rr_region{
        relay::fading_region(to_cpp(ch), to_cpp(scheme), to_cpp(grid))};
  });
}

rr_status rr_fading_optimal_sigma_nnc(const rr_fading_channel* ch,
                                      rr_sum_rate* out) {
  return guarded(
      [&] { emit(out, relay::fading_optimal_sigma_nnc(to_cpp(ch))); });
}

rr_status rr_fading_sumrate_cf_nobinning(const rr_fading_channel* ch,
                                         rr_sum_rate* out) {
  return guarded(
      [&] { emit(out, relay::fading_sumrate_cf_nobinning(to_cpp(ch))); });
}

rr_status rr_fading_check(const rr_fading_channel* ch, rr_fading_checks* out) {
  return guarded([&] {
    require(out, "output");
    const relay::FadingThresholds t = relay::fading_thresholds(to_cpp(ch));
    *out = {relay::fading_same_region(t), relay::fading_same_sumrate(t)};
  });
}

void rr_sweep_config_default(rr_sweep_config* cfg) {
  if (cfg == nullptr) return;
  const double nan = std::nan("");
  *cfg = rr_sweep_config{RR_EQUAL_PATHLOSS, 0, -0.5, 0.0, 0.5, 0.0, 0.0, 0.0,
                         2.0, 10.0, nan, nan, nan, nan, nan, nan,
                         -1.5, 1.5, -1.5, 1.5, 0.05, 0};
}

rr_status rr_layout_channels(const rr_sweep_config* cfg,
                             rr_gaussian_channel* gaussian,
                             rr_fading_channel* fading) {
  return guarded([&] {
    const relay::SweepConfig c = to_cpp(cfg);
    const relay::ChannelPair p =
        relay::layout_to_gains(c.layout, c.mode, c.overrides);
    if (gaussian) {
      const relay::GaussianTwrcChannel& g = p.gaussian;
      *gaussian = {g.g12, g.g1r, g.g21, g.g2r, g.gr1, g.gr2, g.power};
    }
    if (fading) *fading = to_c(p.fading);
  });
}

rr_status rr_geometry_sweep(const rr_sweep_config* cfg, rr_map** out) {
  return guarded([&] {
    require(out, "output");
    const relay::SweepConfig c = to_cpp(cfg);
    *out = new rr_map{relay::sweep(c), c.gain_pair};
  });
}

size_t rr_map_size(const rr_map* map) { return map ? map->cells.size() : 0; }

rr_status rr_map_cell_at(const rr_map* map, size_t index, rr_map_cell* out) {
  return guarded([&] {
    require(map, "map");
    require(out, "output");
    if (index >= map->cells.size()) {
      throw relay::ArgumentError("map cell index out of range");
    }
    const relay::ClassificationCell& c = map->cells[index];
    *out = {c.x,
            c.y,
            c.same_region_gaussian,
            c.same_sumrate_gaussian,
            c.same_region_fading,
            c.same_sumrate_fading,
            c.undetermined};
  });
}

size_t rr_map_undetermined_count(const rr_map* map) {
  if (map == nullptr) return 0;
  size_t n = 0;
  for (const auto& c : map->cells) n += c.undetermined ? 1 : 0;
  return n;
}

rr_status rr_map_to_csv(const rr_map* map, char** out_csv) {
  return guarded([&] {
    require(map, "map");
    require(out_csv, "output");
    *out_csv = dup_string(relay::map_to_csv(map->cells, map->gain_pair));
  });
}

void rr_map_free(rr_map* map) { delete map; }

}  // extern "C"
