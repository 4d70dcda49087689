#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "relay_rates/relay_rates.h"

namespace {

const rr_gaussian_channel kFig3{0.1, 2, 0.1, 0.5, 2, 0.5, 20};

std::string take(char* s) {
  std::string out(s);
  rr_string_free(s);
  return out;
}

}  // namespace

TEST_SUITE("c_api") {
  TEST_CASE("status reporting") {
    double v = 0;
    CHECK(rr_capacity(3.0, &v) == RR_OK);
    CHECK(v == doctest::Approx(1.0));
    CHECK(std::string(rr_last_error()).empty());
    CHECK(rr_capacity(-1.0, &v) == RR_DOMAIN);
    CHECK_FALSE(std::string(rr_last_error()).empty());
    CHECK(rr_capacity(1.0, nullptr) == RR_ARGUMENT);
    CHECK(std::string(rr_status_name(RR_CONVERGENCE)) == "ConvergenceError");
    CHECK(std::strlen(rr_version()) > 0);
  }

  TEST_CASE("pmf handles") {
    rr_pmf* p = nullptr;
    REQUIRE(rr_pmf_from_json(R"({"axes":[["x",2],["y",2]],"probs":[0.5,0,0,0.5]})", &p) ==
            RR_OK);
    double h = 0, i = 0;
    CHECK(rr_pmf_entropy(p, "x,y", &h) == RR_OK);
    CHECK(h == doctest::Approx(1.0));
    CHECK(rr_pmf_cmi(p, "x", "y", "", &i) == RR_OK);
    CHECK(i == doctest::Approx(1.0));
    CHECK(rr_pmf_cmi(p, "x", "x", nullptr, &i) == RR_ARGUMENT);
    CHECK(rr_pmf_entropy(p, "q", &h) == RR_NAME);
    rr_pmf_free(p);
    rr_pmf* bad = nullptr;
    CHECK(rr_pmf_from_json(R"({"axes":[["x",2]],"probs":[0.5,0.6]})", &bad) == RR_NORMALIZATION);
    CHECK(bad == nullptr);
    CHECK(rr_pmf_from_json("[", &bad) == RR_PARSE);
    char* out = nullptr;
    CHECK(rr_dmc_eval_json(R"({"model":"twrc-dmc","axes":[["x",2]],"probs":[0.5,0.5]})", &out) ==
          RR_FACTORIZATION);
  }

  TEST_CASE("gaussian regions through handles") {
    rr_sigma_thresholds t;
    REQUIRE(rr_gaussian_thresholds(&kFig3, &t) == RR_OK);
    CHECK(t.e1 == doctest::Approx(16.24));
    rr_region* orig = nullptr;
    rr_region* nb = nullptr;
    const rr_grid grid{0, 0, 0};
    REQUIRE(rr_gaussian_region(&kFig3, RR_CF_ORIGINAL, &grid, &orig) == RR_OK);
    REQUIRE(rr_gaussian_region(&kFig3, RR_CF_NOBINNING, nullptr, &nb) == RR_OK);
    CHECK(std::string(rr_region_scheme(orig)) == "cf_original");
    CHECK(rr_region_size(nb) > 1);
    CHECK(rr_region_sweep_size(nb) > 100);
    double excess = -1;
    CHECK(rr_region_excess(nb, orig, &excess) == RR_OK);
    CHECK(excess > 1e-4);
    CHECK(rr_region_excess(orig, nb, &excess) == RR_OK);
    CHECK(excess <= 1e-9);
    double s, r1, r2;
    CHECK(rr_region_point(nb, 0, &s, &r1, &r2) == RR_OK);
    CHECK(s >= t.c1 * (1 - 1e-12));
    CHECK(rr_region_point(nb, 1u << 30, &s, &r1, &r2) == RR_ARGUMENT);
    const rr_region* both[] = {orig, nb};
    char* csv = nullptr;
    REQUIRE(rr_regions_to_csv(both, 2, &csv) == RR_OK);
    CHECK(take(csv).rfind("sigma2,R1,R2,scheme\n", 0) == 0);
    rr_region_free(orig);
    rr_region_free(nb);

    rr_gaussian_checks c;
    CHECK(rr_gaussian_check(&kFig3, &c) == RR_OK);
    CHECK_FALSE(c.same_region_nnc);
    CHECK(c.same_sumrate);
    rr_sum_rate a, b;
    CHECK(rr_gaussian_optimal_sigma_nnc(&kFig3, &a) == RR_OK);
    CHECK(rr_gaussian_sumrate_cf_nobinning(&kFig3, &b) == RR_OK);
    CHECK(std::abs(a.sumrate - b.sumrate) < 1e-9);
    rr_gaussian_channel degenerate = kFig3;
    degenerate.g1r = 0;
    CHECK(rr_gaussian_thresholds(&degenerate, &t) == RR_DEGENERATE_CHANNEL);
  }

  TEST_CASE("fading and geometry") {
    rr_fading_channel ch{1, 0.5, 0.5, 2, 10, 1, 1, 1, 1, 1, 1};
    rr_fading_checks c;
    CHECK(rr_fading_check(&ch, &c) == RR_OK);
    CHECK(c.same_region);
    rr_fading_rate_tuple a, q, mean, se;
    CHECK(rr_fading_rates(&ch, 1.0, &a) == RR_OK);
    CHECK(rr_fading_rates_quadrature(&ch, 1.0, &q) == RR_OK);
    CHECK(std::abs(a.rbar11 - q.rbar11) < 1e-8);
    CHECK(rr_fading_monte_carlo(&ch, 1.0, 1000, 1, &mean, &se) == RR_OK);
    double e = 0;
    CHECK(rr_ergodic_log_single(1.0, &e) == RR_OK);
    CHECK(e == doctest::Approx(0.860347382271));
    CHECK(rr_ergodic_log_sum(-1, 1, &e) == RR_DOMAIN);
    rr_region* r = nullptr;
    CHECK(rr_fading_region(&ch, RR_CF_ORIGINAL, nullptr, &r) == RR_ARGUMENT);

    rr_sweep_config cfg;
    rr_sweep_config_default(&cfg);
    cfg.step = 0.5;
    rr_map* map = nullptr;
    REQUIRE(rr_geometry_sweep(&cfg, &map) == RR_OK);
    CHECK(rr_map_size(map) == 49);
    CHECK(rr_map_undetermined_count(map) == 2);  // relay on a user
    rr_map_cell cell;
    CHECK(rr_map_cell_at(map, 24, &cell) == RR_OK);
    CHECK(cell.x == doctest::Approx(0.0));
    char* csv = nullptr;
    CHECK(rr_map_to_csv(map, &csv) == RR_OK);
    rr_string_free(csv);
    rr_map_free(map);

    cfg.relay_x = 0.5;
    rr_gaussian_channel g;
    CHECK(rr_layout_channels(&cfg, &g, nullptr) == RR_GEOMETRY);
  }
}
