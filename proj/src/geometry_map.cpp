#include "relay_rates/geometry_map.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "relay_rates/errors.hpp"

namespace relay {

namespace {

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool rel_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({std::abs(a), std::abs(b), 1e-300});
}

void require_tie(double a, double b, const char* what, SymmetryMode m) {
  if (!rel_equal(a, b)) {
    throw GeometryError(std::string(what) + " must match in " + to_string(m) +
                        " mode");
  }
}

unsigned thread_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RELAY_RATES_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) n = std::min<unsigned>(n, unsigned(cap));
  }
  return unsigned(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

std::size_t axis_points(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) {
    throw ArgumentError("sweep needs step > 0 and max >= min");
  }
  return std::size_t(std::llround((hi - lo) / step)) + 1;
}

// Spreads the points evenly so the endpoints are hit exactly.
double axis_value(double lo, double hi, std::size_t i, std::size_t n) {
  return n == 1 ? lo : lo + (hi - lo) * double(i) / double(n - 1);
}

}  // namespace

const char* to_string(SymmetryMode m) {
  switch (m) {
    case SymmetryMode::EqualPathloss: return "equal_pathloss";
    case SymmetryMode::Reciprocity: return "reciprocity";
    case SymmetryMode::UplinkDownlink: return "uplink_downlink";
  }
  return "?";
}

SymmetryMode symmetry_mode_from_string(std::string_view name) {
  for (SymmetryMode m : {SymmetryMode::EqualPathloss, SymmetryMode::Reciprocity,
                         SymmetryMode::UplinkDownlink}) {
    if (name == to_string(m)) return m;
  }
  throw NameError("unknown symmetry mode '" + std::string(name) + "'");
}

ChannelPair layout_to_gains(const NodeLayout& layout, SymmetryMode mode,
                            const GainOverrides& o) {
  const double d12 = distance(layout.user1, layout.user2);
  const double d1r = distance(layout.user1, layout.relay);
  const double d2r = distance(layout.user2, layout.relay);
  if (d12 == 0.0 || d1r == 0.0 || d2r == 0.0) {
    throw GeometryError("two nodes share a position");
  }
  if (!(layout.power > 0.0) || !(layout.alpha >= 0.0)) {
    throw GeometryError("layout needs power > 0 and alpha >= 0");
  }
  const double a = layout.alpha;
  auto pathloss = [&](double d) { return std::pow(d, -a / 2.0); };

  GaussianTwrcChannel g;
  g.power = layout.power;
  g.g12 = o.g12.value_or(pathloss(d12));
  g.g21 = o.g21.value_or(pathloss(d12));
  g.g1r = o.g1r.value_or(pathloss(d1r));
  g.gr1 = o.gr1.value_or(pathloss(d1r));
  g.g2r = o.g2r.value_or(pathloss(d2r));
  g.gr2 = o.gr2.value_or(pathloss(d2r));
  for (double v : {g.g12, g.g21, g.g1r, g.gr1, g.g2r, g.gr2}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw GeometryError("pathloss gains must be finite and nonnegative");
    }
  }

  switch (mode) {
    case SymmetryMode::EqualPathloss:
      require_tie(g.g12, g.g21, "direct gains", mode);
      [[fallthrough]];
    case SymmetryMode::Reciprocity:
      require_tie(g.g1r, g.gr1, "user 1 relay gains", mode);
      require_tie(g.g2r, g.gr2, "user 2 relay gains", mode);
      break;
    case SymmetryMode::UplinkDownlink:
      require_tie(g.gr1, g.gr2, "uplink gains", mode);
      require_tie(g.g1r, g.g2r, "downlink gains", mode);
      break;
  }

  // Same mean SNRs on the fading side: E|g|^2 = moment / d^alpha.
  FadingTwrcChannel f;
  f.d12 = d12;
  f.d1r = d1r;
  f.d2r = d2r;
  f.alpha = a;
  f.power = layout.power;
  auto moment = [&](double gain, double d) {
    return gain * gain * std::pow(d, a);
  };
  f.moments = {moment(g.g12, d12), moment(g.g21, d12), moment(g.g1r, d1r),
               moment(g.g2r, d2r), moment(g.gr1, d1r), moment(g.gr2, d2r)};
  return {g, f};
}

ClassificationCell classify(double x, double y, const SweepConfig& config) {
  ClassificationCell cell;
  cell.x = x;
  cell.y = y;
  try {
    NodeLayout layout = config.layout;
    GainOverrides o = config.overrides;
    if (config.gain_pair) {
      if (x < 0.0 || y < 0.0) throw GeometryError("squared gains must be >= 0");
      o.g12 = std::sqrt(x);
      o.g21 = std::sqrt(y);
    } else {
      layout.relay = {x, y};
    }
    const ChannelPair ch = layout_to_gains(layout, config.mode, o);
    cell.same_region_gaussian = check_same_region_nnc(ch.gaussian);
    cell.same_sumrate_gaussian = check_same_sumrate(ch.gaussian);
    const FadingThresholds t = fading_thresholds(ch.fading);
    cell.same_region_fading = fading_same_region(t);
    cell.same_sumrate_fading = fading_same_sumrate(t);
  } catch (const Error& e) {
    cell = ClassificationCell{};
    cell.x = x;
    cell.y = y;
    cell.undetermined = true;
    cell.note = std::string(to_string(e.kind())) + ": " + e.what();
  }
  return cell;
}

std::vector<ClassificationCell> sweep(const SweepConfig& config) {
  const std::size_t nx = axis_points(config.x_min, config.x_max, config.step);
  const std::size_t ny = axis_points(config.y_min, config.y_max, config.step);
  std::vector<ClassificationCell> cells(nx * ny);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      const std::size_t iy = k / nx;
      const std::size_t ix = k % nx;
      cells[k] = classify(axis_value(config.x_min, config.x_max, ix, nx),
                          axis_value(config.y_min, config.y_max, iy, ny),
                          config);
    }
  };
  const unsigned n = thread_count(config.threads, cells.size());
  std::vector<std::jthread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();  // joins
  return cells;
}

std::string map_to_csv(const std::vector<ClassificationCell>& cells,
                       bool gain_pair) {
  std::ostringstream os;
  os << (gain_pair ? "g12sq,g21sq" : "x,y")
     << ",same_region_g,same_sumrate_g,same_region_f,same_sumrate_f,"
        "undetermined\n";
  char buf[64];
  for (const auto& c : cells) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g", c.x, c.y);
    os << buf << ',' << int(c.same_region_gaussian) << ','
       << int(c.same_sumrate_gaussian) << ',' << int(c.same_region_fading)
       << ',' << int(c.same_sumrate_fading) << ',' << int(c.undetermined)
       << '\n';
  }
  return os.str();
}

}  // namespace relay
