#ifndef RELAY_RATES_H
#define RELAY_RATES_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RR_API __declspec(dllexport)
#else
#define RR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rr_status {
  RR_OK = 0,
  RR_ARGUMENT,
  RR_NAME,
  RR_NORMALIZATION,
  RR_SIZE,
  RR_FACTORIZATION,
  RR_DOMAIN,
  RR_DEGENERATE_CHANNEL,
  RR_EMPTY_REGION,
  RR_CONVERGENCE,
  RR_GEOMETRY,
  RR_PARSE,
  RR_INTERNAL
} rr_status;

/* Message of the last failed call on this thread ("" after success). */
RR_API const char* rr_last_error(void);
RR_API const char* rr_status_name(rr_status status);
RR_API const char* rr_version(void);
/* Frees strings returned through char** out-parameters. */
RR_API void rr_string_free(char* s);

/* ---- finite-alphabet information measures ---- */

typedef struct rr_pmf rr_pmf;

/* {"axes":[["x",2],...],"probs":[...]} */
RR_API rr_status rr_pmf_from_json(const char* json, rr_pmf** out);
RR_API void rr_pmf_free(rr_pmf* pmf);
/* Variable lists are comma separated; "" or NULL is the empty set. */
RR_API rr_status rr_pmf_entropy(const rr_pmf* pmf, const char* vars,
                                double* out);
RR_API rr_status rr_pmf_cmi(const rr_pmf* pmf, const char* a, const char* b,
                            const char* c, double* out);

/* Evaluates every scheme for {"model":"oneway-dmc"|"twrc-dmc", ...pmf}. */
RR_API rr_status rr_dmc_eval_json(const char* json, char** out_json);

/* ---- shared region types ---- */

typedef enum rr_scheme {
  RR_CF_ORIGINAL = 0,
  RR_CF_NOBINNING = 1,
  RR_NNC = 2
} rr_scheme;

/* lo/hi <= 0 select the module defaults; points = 0 selects 2000. */
typedef struct rr_grid {
  size_t points;
  double lo;
  double hi;
} rr_grid;

typedef struct rr_sum_rate {
  double sigma2;
  double sumrate;
} rr_sum_rate;

typedef struct rr_region rr_region;

RR_API size_t rr_region_size(const rr_region* region);
RR_API rr_status rr_region_point(const rr_region* region, size_t index,
                                 double* sigma2, double* r1, double* r2);
RR_API const char* rr_region_scheme(const rr_region* region);
RR_API size_t rr_region_sweep_size(const rr_region* region);
/* Largest distance by which `outer` leaves the region under `inner`. */
RR_API rr_status rr_region_excess(const rr_region* outer,
                                  const rr_region* inner, double* out);
RR_API rr_status rr_regions_to_csv(const rr_region* const* regions,
                                   size_t count, char** out_csv);
RR_API void rr_region_free(rr_region* region);

/* ---- Gaussian two-way relay channel ---- */

typedef struct rr_gaussian_channel {
  double g12, g1r, g21, g2r, gr1, gr2;
  double power;
} rr_gaussian_channel;

typedef struct rr_rate_tuple {
  double r11, r12, r21, r22;
} rr_rate_tuple;

typedef struct rr_sigma_thresholds {
  double c1, c2, e1, e2, r;
} rr_sigma_thresholds;

typedef struct rr_gaussian_checks {
  int same_region_original;
  int same_region_nnc;
  int same_sumrate;
} rr_gaussian_checks;

RR_API rr_status rr_capacity(double snr, double* out);
RR_API rr_status rr_gaussian_rate_tuple(const rr_gaussian_channel* ch,
                                        double sigma2, rr_rate_tuple* out);
RR_API rr_status rr_gaussian_thresholds(const rr_gaussian_channel* ch,
                                        rr_sigma_thresholds* out);
RR_API rr_status rr_gaussian_sum_rate_at(const rr_gaussian_channel* ch,
                                         double sigma2, double* out);
RR_API rr_status rr_gaussian_region(const rr_gaussian_channel* ch,
                                    rr_scheme scheme, const rr_grid* grid,
                                    rr_region** out);
RR_API rr_status rr_gaussian_optimal_sigma_nnc(const rr_gaussian_channel* ch,
                                               rr_sum_rate* out);
RR_API rr_status rr_gaussian_sumrate_cf_nobinning(
    const rr_gaussian_channel* ch, rr_sum_rate* out);
RR_API rr_status rr_gaussian_sumrate_cf_original(const rr_gaussian_channel* ch,
                                                 rr_sum_rate* out);
RR_API rr_status rr_gaussian_check(const rr_gaussian_channel* ch,
                                   rr_gaussian_checks* out);

/* ---- Rayleigh-fading two-way relay channel ---- */

typedef struct rr_fading_channel {
  double d12, d1r, d2r;
  double alpha;
  double power;
  /* second moments E|h|^2 */
  double h12, h21, h1r, h2r, hr1, hr2;
} rr_fading_channel;

typedef struct rr_fading_rate_tuple {
  double rbar11, rbar12, rbar21, rbar22, f1, f2, d1;
} rr_fading_rate_tuple;

typedef struct rr_fading_thresholds {
  double c1bar, c2bar, z1bar, e1bar, e2bar, gbar, nbar;
} rr_fading_thresholds;

typedef struct rr_fading_checks {
  int same_region;
  int same_sumrate;
} rr_fading_checks;

RR_API rr_status rr_ergodic_log_single(double lambda, double* out);
RR_API rr_status rr_ergodic_log_sum(double lambda_u, double lambda_v,
                                    double* out);
RR_API rr_status rr_fading_rates(const rr_fading_channel* ch,
                                      double sigma2,
                                      rr_fading_rate_tuple* out);
RR_API rr_status rr_fading_rates_quadrature(const rr_fading_channel* ch,
                                                 double sigma2,
                                                 rr_fading_rate_tuple* out);
RR_API rr_status rr_fading_monte_carlo(const rr_fading_channel* ch,
                                       double sigma2, size_t samples,
                                       uint64_t seed,
                                       rr_fading_rate_tuple* mean,
                                       rr_fading_rate_tuple* standard_error);
RR_API rr_status rr_fading_thresholds_of(const rr_fading_channel* ch,
                                         rr_fading_thresholds* out);
RR_API rr_status rr_fading_sum_rate_at(const rr_fading_channel* ch,
                                       double sigma2, double* out);
RR_API rr_status rr_fading_region(const rr_fading_channel* ch,
                                  rr_scheme scheme, const rr_grid* grid,
                                  rr_region** out);
RR_API rr_status rr_fading_optimal_sigma_nnc(const rr_fading_channel* ch,
                                             rr_sum_rate* out);
RR_API rr_status rr_fading_sumrate_cf_nobinning(const rr_fading_channel* ch,
                                                rr_sum_rate* out);
RR_API rr_status rr_fading_check(const rr_fading_channel* ch,
                                 rr_fading_checks* out);

/* ---- relay placement maps ---- */

typedef enum rr_symmetry {
  RR_EQUAL_PATHLOSS = 0,
  RR_RECIPROCITY = 1,
  RR_UPLINK_DOWNLINK = 2
} rr_symmetry;

/* Gain overrides are pathloss amplitudes; NaN leaves a gain to the layout. */
typedef struct rr_sweep_config {
  rr_symmetry mode;
  int gain_pair;
  double user1_x, user1_y, user2_x, user2_y, relay_x, relay_y;
  double alpha, power;
  double g12, g21, g1r, g2r, gr1, gr2;
  double x_min, x_max, y_min, y_max, step;
  unsigned threads;
} rr_sweep_config;

typedef struct rr_map_cell {
  double x, y;
  int same_region_gaussian;
  int same_sumrate_gaussian;
  int same_region_fading;
  int same_sumrate_fading;
  int undetermined;
} rr_map_cell;

typedef struct rr_map rr_map;

/* Fills the relay-position sweep defaults (users at (+-0.5, 0), alpha 2,
   P 10, [-1.5, 1.5]^2 at 0.05, no overrides). */
RR_API void rr_sweep_config_default(rr_sweep_config* cfg);
RR_API rr_status rr_layout_channels(const rr_sweep_config* cfg,
                                    rr_gaussian_channel* gaussian,
                                    rr_fading_channel* fading);
RR_API rr_status rr_geometry_sweep(const rr_sweep_config* cfg, rr_map** out);
RR_API size_t rr_map_size(const rr_map* map);
RR_API rr_status rr_map_cell_at(const rr_map* map, size_t index,
                                rr_map_cell* out);
RR_API size_t rr_map_undetermined_count(const rr_map* map);
RR_API rr_status rr_map_to_csv(const rr_map* map, char** out_csv);
RR_API void rr_map_free(rr_map* map);

#ifdef __cplusplus
}
#endif

#endif
