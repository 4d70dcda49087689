#include "scenario.hpp"

#include <cmath>
#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace cli {

namespace {

void only_keys(const json& obj, const std::string& where,
               const std::set<std::string>& allowed) {
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k)) throw ValidationError(where, "unknown key '" + k + "'");
  }
}

const json& object_at(const json& obj, const std::string& key,
                      const std::string& where) {
  if (!obj.contains(key)) throw ValidationError(where, "missing '" + key + "'");
  const json& v = obj.at(key);
  if (!v.is_object()) throw ValidationError(where + "/" + key, "expected an object");
  return v;
}

double number(const json& obj, const std::string& key, const std::string& where,
              std::optional<double> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ValidationError(where, "missing '" + key + "'");
  }
  const json& v = obj.at(key);
  if (!v.is_number() || !std::isfinite(v.get<double>())) {
    throw ValidationError(where + "/" + key, "expected a finite number");
  }
  return v.get<double>();
}

double positive(const json& obj, const std::string& key, const std::string& where,
                std::optional<double> fallback = std::nullopt) {
  const double v = number(obj, key, where, fallback);
  if (!(v > 0.0)) throw ValidationError(where + "/" + key, "must be positive");
  return v;
}

std::size_t count(const json& obj, const std::string& key,
                  const std::string& where, std::size_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 2) {
    throw ValidationError(where + "/" + key, "expected an integer >= 2");
  }
  return v.get<std::size_t>();
}

json pair_of(const json& obj, const std::string& key, const std::string& where,
             json fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ValidationError(where + "/" + key, "expected [number, number]");
  }
  return v;
}

json normalize_gaussian_channel(const json& c, const std::string& where) {
  only_keys(c, where, {"g12", "g1r", "g21", "g2r", "gr1", "gr2", "P"});
  json out;
  for (const char* k : {"g12", "g1r", "g21", "g2r", "gr1", "gr2"}) {
    out[k] = number(c, k, where);
  }
  out["P"] = positive(c, "P", where);
  return out;
}

json normalize_fading_channel(const json& c, const std::string& where) {
  only_keys(c, where, {"d12", "d1r", "d2r", "alpha", "P", "moments"});
  json out;
  for (const char* k : {"d12", "d1r", "d2r"}) out[k] = positive(c, k, where);
  const double alpha = number(c, "alpha", where);
  if (alpha < 0.0) throw ValidationError(where + "/alpha", "must be >= 0");
  out["alpha"] = alpha;
  out["P"] = positive(c, "P", where);
  json m = json::object();
  const json empty = json::object();
  const json& given = c.contains("moments") ? c.at("moments") : empty;
  if (!given.is_object()) throw ValidationError(where + "/moments", "expected an object");
  only_keys(given, where + "/moments", {"h12", "h21", "h1r", "h2r", "hr1", "hr2"});
  for (const char* k : {"h12", "h21", "h1r", "h2r", "hr1", "hr2"}) {
    const double v = number(given, k, where + "/moments", 1.0);
    if (v < 0.0) throw ValidationError(where + "/moments/" + k, "must be >= 0");
    m[k] = v;
  }
  out["moments"] = m;
  return out;
}

json normalize_grid(const json& s) {
  json g{{"points", 2000}};
  if (!s.contains("grid")) return g;
  const json& in = s.at("grid");
  if (!in.is_object()) throw ValidationError("/grid", "expected an object");
  only_keys(in, "/grid", {"points", "lo", "hi"});
  g["points"] = count(in, "points", "/grid", 2000);
  if (in.contains("lo")) g["lo"] = positive(in, "lo", "/grid");
  if (in.contains("hi")) g["hi"] = positive(in, "hi", "/grid");
  if (g.contains("lo") && g.contains("hi") && !(g["hi"] > g["lo"])) {
    throw ValidationError("/grid", "hi must exceed lo");
  }
  return g;
}

json normalize_schemes(const json& s, const std::vector<std::string>& allowed) {
  if (!s.contains("schemes")) return allowed;
  const json& in = s.at("schemes");
  if (!in.is_array() || in.empty()) {
    throw ValidationError("/schemes", "expected a non-empty array");
  }
  for (const auto& v : in) {
    if (!v.is_string() ||
        std::find(allowed.begin(), allowed.end(), v.get<std::string>()) ==
            allowed.end()) {
      throw ValidationError("/schemes", "unsupported scheme " + v.dump());
    }
  }
  return in;
}

json normalize_power_sweep(const json& s) {
  if (!s.contains("power_sweep")) return nullptr;
  const json& in = s.at("power_sweep");
  if (!in.is_object()) throw ValidationError("/power_sweep", "expected an object");
  only_keys(in, "/power_sweep", {"min", "max", "points"});
  json out{{"min", positive(in, "min", "/power_sweep")},
           {"max", positive(in, "max", "/power_sweep")},
           {"points", count(in, "points", "/power_sweep", 20)}};
  if (out["max"] < out["min"]) throw ValidationError("/power_sweep", "max < min");
  return out;
}

json normalize_oracle(const json& s) {
  json out{{"points", 4000}};
  if (!s.contains("oracle")) return out;
  const json& in = s.at("oracle");
  if (!in.is_object()) throw ValidationError("/oracle", "expected an object");
  only_keys(in, "/oracle", {"points"});
  out["points"] = count(in, "points", "/oracle", 4000);
  return out;
}

json normalize_sweep(const json& s) {
  const json& in = object_at(s, "sweep", "");
  const std::string w = "/sweep";
  only_keys(in, w, {"mode", "gain_pair", "user1", "user2", "relay", "alpha", "P",
                    "overrides", "x", "y", "step", "threads"});
  json out;
  if (!in.contains("mode") || !in["mode"].is_string()) {
    throw ValidationError(w, "missing string 'mode'");
  }
  const std::string mode = in["mode"];
  if (mode != "equal_pathloss" && mode != "reciprocity" && mode != "uplink_downlink") {
    throw ValidationError(w + "/mode", "unknown mode '" + mode + "'");
  }
  out["mode"] = mode;
  if (in.contains("gain_pair") && !in["gain_pair"].is_boolean()) {
    throw ValidationError(w + "/gain_pair", "expected a boolean");
  }
  const bool gain_pair = in.value("gain_pair", false);
  out["gain_pair"] = gain_pair;
  out["user1"] = pair_of(in, "user1", w, {-0.5, 0.0});
  out["user2"] = pair_of(in, "user2", w, {0.5, 0.0});
  out["relay"] = pair_of(in, "relay", w, {0.0, 0.0});
  const double alpha = number(in, "alpha", w, 2.0);
  if (alpha < 0.0) throw ValidationError(w + "/alpha", "must be >= 0");
  out["alpha"] = alpha;
  out["P"] = positive(in, "P", w, 10.0);
  json ov = json::object();
  if (in.contains("overrides")) {
    const json& o = in.at("overrides");
    if (!o.is_object()) throw ValidationError(w + "/overrides", "expected an object");
    only_keys(o, w + "/overrides", {"g12", "g21", "g1r", "g2r", "gr1", "gr2"});
    for (const auto& [k, v] : o.items()) {
      const double g = number(o, k, w + "/overrides");
      if (g < 0.0) throw ValidationError(w + "/overrides/" + k, "must be >= 0");
      ov[k] = g;
    }
  }
  out["overrides"] = ov;
  const json dflt = gain_pair ? json{0.0, 4.0} : json{-1.5, 1.5};
  out["x"] = pair_of(in, "x", w, dflt);
  out["y"] = pair_of(in, "y", w, dflt);
  for (const char* k : {"x", "y"}) {
    if (out[k][1].get<double>() < out[k][0].get<double>()) {
      throw ValidationError(w + "/" + k, "max < min");
    }
  }
  out["step"] = positive(in, "step", w, 0.05);
  if (in.contains("threads")) {
    if (!in["threads"].is_number_unsigned()) {
      throw ValidationError(w + "/threads", "expected a nonnegative integer");
    }
    out["threads"] = in["threads"];
  } else {
    out["threads"] = 0;
  }
  return out;
}

json normalize_pmf(const json& s) {
  const json& in = object_at(s, "pmf", "");
  only_keys(in, "/pmf", {"axes", "probs"});
  if (!in.contains("axes") || !in["axes"].is_array()) {
    throw ValidationError("/pmf", "missing array 'axes'");
  }
  for (const auto& a : in["axes"]) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_string() ||
        !a[1].is_number_unsigned()) {
      throw ValidationError("/pmf/axes", "expected [name, size] pairs");
    }
  }
  if (!in.contains("probs") || !in["probs"].is_array()) {
    throw ValidationError("/pmf", "missing array 'probs'");
  }
  for (const auto& p : in["probs"]) {
    if (!p.is_number()) throw ValidationError("/pmf/probs", "expected numbers");
  }
  return in;
}

}  // namespace

json load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path, "cannot open scenario file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::exception& e) {
    throw ValidationError(path, std::string("invalid JSON: ") + e.what());
  }
}

json normalize(const json& s, const std::string& expected_model) {
  if (!s.is_object()) throw ValidationError("", "scenario must be an object");
  if (!s.contains("model") || !s["model"].is_string()) {
    throw ValidationError("", "missing string 'model'");
  }
  const std::string model = s["model"];
  const bool dmc = model == "oneway-dmc" || model == "twrc-dmc";
  if (expected_model == "dmc" ? !dmc : model != expected_model) {
    throw ValidationError("/model", "expected model '" + expected_model +
                                        "', got '" + model + "'");
  }

  json out{{"model", model}};
  if (s.contains("description")) out["description"] = s["description"];
  if (s.contains("seed")) {
    if (!s["seed"].is_number_unsigned()) {
      throw ValidationError("/seed", "expected a nonnegative integer");
    }
    out["seed"] = s["seed"];
  } else {
    out["seed"] = 0;
  }
  json output = json::object();
  if (s.contains("output")) {
    const json& o = s["output"];
    if (!o.is_object()) throw ValidationError("/output", "expected an object");
    only_keys(o, "/output", {"path", "format"});
    if (o.contains("path")) {
      if (!o["path"].is_string()) throw ValidationError("/output/path", "expected a string");
      output["path"] = o["path"];
    }
    if (o.contains("format")) {
      if (o["format"] != "csv" && o["format"] != "json") {
        throw ValidationError("/output/format", "expected 'csv' or 'json'");
      }
      output["format"] = o["format"];
    }
  }
  out["output"] = output;

  const std::set<std::string> common{"model", "description", "seed", "output"};
  auto allow = [&](std::set<std::string> extra) {
    extra.insert(common.begin(), common.end());
    only_keys(s, "", extra);
  };

  if (model == "gaussian") {
    allow({"channel", "schemes", "grid", "power_sweep", "oracle"});
    out["channel"] = normalize_gaussian_channel(object_at(s, "channel", ""), "/channel");
    out["schemes"] = normalize_schemes(s, {"cf_original", "cf_nobinning", "nnc"});
    out["grid"] = normalize_grid(s);
    out["power_sweep"] = normalize_power_sweep(s);
    out["oracle"] = normalize_oracle(s);
  } else if (model == "fading") {
    allow({"channel", "schemes", "grid", "oracle", "monte_carlo"});
    out["channel"] = normalize_fading_channel(object_at(s, "channel", ""), "/channel");
    out["schemes"] = normalize_schemes(s, {"cf_nobinning", "nnc"});
    out["grid"] = normalize_grid(s);
    out["oracle"] = normalize_oracle(s);
    json mc{{"samples", 1000000}, {"sigma2", 1.0}};
    if (s.contains("monte_carlo")) {
      const json& m = s["monte_carlo"];
      if (!m.is_object()) throw ValidationError("/monte_carlo", "expected an object");
      only_keys(m, "/monte_carlo", {"samples", "sigma2"});
      mc["samples"] = count(m, "samples", "/monte_carlo", 1000000);
      mc["sigma2"] = positive(m, "sigma2", "/monte_carlo", 1.0);
    }
    out["monte_carlo"] = mc;
  } else if (model == "geometry") {
    allow({"sweep"});
    out["sweep"] = normalize_sweep(s);
  } else if (dmc) {
    allow({"pmf"});
    out["pmf"] = normalize_pmf(s);
  } else {
    throw ValidationError("/model", "unknown model '" + model + "'");
  }
  return out;
}

rr_gaussian_channel gaussian_channel(const json& c) {
  return {c["g12"], c["g1r"], c["g21"], c["g2r"], c["gr1"], c["gr2"], c["P"]};
}

rr_fading_channel fading_channel(const json& c) {
  const json& m = c["moments"];
  return {c["d12"], c["d1r"], c["d2r"], c["alpha"], c["P"],
          m["h12"], m["h21"], m["h1r"], m["h2r"],   m["hr1"], m["hr2"]};
}

rr_grid grid_of(const json& s) {
  const json& g = s["grid"];
  return {g["points"].get<std::size_t>(), g.value("lo", 0.0), g.value("hi", 0.0)};
}

std::vector<rr_scheme> schemes_of(const json& s) {
  std::vector<rr_scheme> out;
  for (const auto& v : s["schemes"]) {
    const std::string n = v;
    out.push_back(n == "cf_original" ? RR_CF_ORIGINAL
                  : n == "cf_nobinning" ? RR_CF_NOBINNING
                                        : RR_NNC);
  }
  return out;
}

rr_sweep_config sweep_config(const json& w) {
  rr_sweep_config c;
  rr_sweep_config_default(&c);
  const std::string mode = w["mode"];
  c.mode = mode == "equal_pathloss" ? RR_EQUAL_PATHLOSS
           : mode == "reciprocity"  ? RR_RECIPROCITY
                                    : RR_UPLINK_DOWNLINK;
  c.gain_pair = w["gain_pair"].get<bool>() ? 1 : 0;
  c.user1_x = w["user1"][0];
  c.user1_y = w["user1"][1];
  c.user2_x = w["user2"][0];
  c.user2_y = w["user2"][1];
  c.relay_x = w["relay"][0];
  c.relay_y = w["relay"][1];
  c.alpha = w["alpha"];
  c.power = w["P"];
  const json& o = w["overrides"];
  c.g12 = o.value("g12", c.g12);
  c.g21 = o.value("g21", c.g21);
  c.g1r = o.value("g1r", c.g1r);
  c.g2r = o.value("g2r", c.g2r);
  c.gr1 = o.value("gr1", c.gr1);
  c.gr2 = o.value("gr2", c.gr2);
  c.x_min = w["x"][0];
  c.x_max = w["x"][1];
  c.y_min = w["y"][0];
  c.y_max = w["y"][1];
  c.step = w["step"];
  c.threads = w["threads"];
  return c;
}

PowerSweep power_sweep(const json& s) {
  PowerSweep p;
  if (s["power_sweep"].is_null()) return p;
  p.min = s["power_sweep"]["min"];
  p.max = s["power_sweep"]["max"];
  p.points = s["power_sweep"]["points"];
  return p;
}

}  // namespace cli
