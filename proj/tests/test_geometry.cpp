#include <cmath>

#include "doctest.h"
#include "relay_rates/errors.hpp"
#include "relay_rates/geometry_map.hpp"

using namespace relay;

TEST_SUITE("geometry_map") {
  TEST_CASE("layout gains follow the pathloss law") {
    NodeLayout l;
    l.relay = {0.0, 0.5};
    const ChannelPair c = layout_to_gains(l, SymmetryMode::EqualPathloss);
    const double d = std::hypot(0.5, 0.5);
    CHECK(c.gaussian.g1r == doctest::Approx(1.0 / d));
    CHECK(c.gaussian.g12 == doctest::Approx(1.0));
    CHECK(c.gaussian.power == 10.0);
    CHECK(c.fading.d1r == doctest::Approx(d));
    CHECK(c.fading.moments.h1r == doctest::Approx(1.0));
  }

  TEST_CASE("overrides and mode ties") {
    NodeLayout l;
    GainOverrides o;
    o.gr1 = o.g1r = 1.0;
    o.gr2 = o.g2r = 2.0;
    o.g12 = 0.5;
    o.g21 = 1.5;
    const ChannelPair c = layout_to_gains(l, SymmetryMode::Reciprocity, o);
    CHECK(c.gaussian.g2r == 2.0);
    CHECK(c.fading.moments.h2r == doctest::Approx(4.0 * 0.25));
    CHECK_THROWS_AS(layout_to_gains(l, SymmetryMode::EqualPathloss, o), GeometryError);
    CHECK_THROWS_AS(layout_to_gains(l, SymmetryMode::UplinkDownlink, o), GeometryError);
    l.relay = l.user1;
    CHECK_THROWS_AS(layout_to_gains(l, SymmetryMode::EqualPathloss), GeometryError);
    CHECK_THROWS_AS(symmetry_mode_from_string("spiral"), NameError);
    CHECK(symmetry_mode_from_string("reciprocity") == SymmetryMode::Reciprocity);
  }

  TEST_CASE("relay on a user is undetermined") {
    const ClassificationCell c = classify(0.5, 0.0, SweepConfig{});
    CHECK(c.undetermined);
    CHECK_FALSE(c.note.empty());
  }

  TEST_CASE("same region implies same sum rate, mirror symmetry and determinism") {
    SweepConfig cfg;
    cfg.step = 0.25;
    cfg.threads = 3;
    const auto cells = sweep(cfg);
    REQUIRE(cells.size() == 13 * 13);
    for (const auto& c : cells) {
      if (c.undetermined) continue;
      if (c.same_region_gaussian) CHECK(c.same_sumrate_gaussian);
      if (c.same_region_fading) CHECK(c.same_sumrate_fading);
    }
    // Swapping the users mirrors the plane about x = 0.
    for (std::size_t iy = 0; iy < 13; ++iy)
      for (std::size_t ix = 0; ix < 13; ++ix) {
        const auto& a = cells[iy * 13 + ix];
        const auto& b = cells[iy * 13 + (12 - ix)];
        CHECK(a.x == doctest::Approx(-b.x));
        CHECK(a.undetermined == b.undetermined);
        CHECK(a.same_region_gaussian == b.same_region_gaussian);
        CHECK(a.same_sumrate_gaussian == b.same_sumrate_gaussian);
        CHECK(a.same_region_fading == b.same_region_fading);
        CHECK(a.same_sumrate_fading == b.same_sumrate_fading);
      }
    cfg.threads = 1;
    const auto again = sweep(cfg);
    CHECK(map_to_csv(again, false) == map_to_csv(cells, false));
  }

  TEST_CASE("row-major order and csv header") {
    SweepConfig cfg;
    cfg.x_min = 0.0, cfg.x_max = 0.1, cfg.y_min = 1.0, cfg.y_max = 1.05, cfg.step = 0.05;
    const auto cells = sweep(cfg);
    REQUIRE(cells.size() == 6);
    CHECK(cells[1].x == doctest::Approx(0.05));
    CHECK(cells[1].y == doctest::Approx(1.0));
    CHECK(cells[3].y == doctest::Approx(1.05));
    const std::string csv = map_to_csv(cells, false);
    CHECK(csv.rfind("x,y,same_region_g,same_sumrate_g,same_region_f,same_sumrate_f,undetermined\n",
                    0) == 0);
    CHECK(map_to_csv(cells, true).rfind("g12sq,g21sq,", 0) == 0);
  }

  TEST_CASE("gain-pair sweep uses squared direct gains") {
    SweepConfig cfg;
    cfg.mode = SymmetryMode::Reciprocity;
    cfg.gain_pair = true;
    cfg.overrides.gr1 = cfg.overrides.g1r = 1.0;
    cfg.overrides.gr2 = cfg.overrides.g2r = 2.0;
    const ClassificationCell c = classify(0.25, 1.0, cfg);
    CHECK_FALSE(c.undetermined);
    cfg.x_min = cfg.y_min = 0.0;
    cfg.x_max = cfg.y_max = 4.0;
    cfg.step = 0.5;
    for (const auto& cell : sweep(cfg)) CHECK_FALSE(cell.undetermined);
  }
}
