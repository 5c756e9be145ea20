// SPDX-License-Identifier: Apache-2.0
#include "sixdma/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"

namespace sixdma {

namespace {

using nlohmann::json;

constexpr double kDegToRad = std::numbers::pi / 180.0;

void reject_unknown_keys(const json& obj, const std::string& section,
                         const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) {
      throw ConfigValidationError("unknown key '" + item.key() + "' in section '" + section +
                                  "'");
    }
  }
}

double get_num(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) {
    throw ConfigValidationError(std::string(key) + " must be a number");
  }
  return obj[key].get<double>();
}

int get_int(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) {
    throw ConfigValidationError(std::string(key) + " must be an integer");
  }
  return obj[key].get<int>();
}

Vec3 get_vec3(const json& obj, const char* key, const Vec3& fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& arr = obj[key];
  if (!arr.is_array() || arr.size() != 3) {
    throw ConfigValidationError(std::string(key) + " must be a 3-element array");
  }
  return Vec3(arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>());
}

HotspotSpec parse_hotspot(const json& obj, std::size_t index) {
  reject_unknown_keys(obj, "scenario.hotspots[" + std::to_string(index) + "]",
                      {"distance_m", "azimuth_deg", "elevation_deg", "radius_m", "weight"});
  const double d = get_num(obj, "distance_m", 0.0);
  const double az = get_num(obj, "azimuth_deg", 0.0) * kDegToRad;
  const double el = get_num(obj, "elevation_deg", 0.0) * kDegToRad;
  HotspotSpec h;
  h.center = d * Vec3(std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el));
  h.radius = get_num(obj, "radius_m", 1.0);
  h.weight = get_num(obj, "weight", 1.0);
  return h;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigValidationError(message);
}

void validate(const ExperimentConfig& cfg) {
  require(cfg.num_surfaces >= 1, "array.surfaces must be >= 1");
  require(cfg.antennas_per_surface >= 1, "array.antennas_per_surface must be >= 1");
  require(cfg.wavelength > 0.0, "array.wavelength_m must be > 0");
  require(cfg.antenna_spacing > 0.0, "array.antenna_spacing_m must be > 0");
  require(cfg.min_surface_distance > 0.0, "array.min_surface_distance_m must be > 0");
  require(cfg.site.half_extents.minCoeff() > 0.0, "site.half_extents_m must be positive");

  require(cfg.density.mu > 0.0, "scenario.mean_users must be > 0");
  require(cfg.density.xi >= 0.0 && cfg.density.xi <= 1.0, "xi must be in [0,1]");
  cfg.density.region.validate();

  require(cfg.tx_power > 0.0, "signal.tx_power_w must be > 0");
  require(cfg.noise_power > 0.0, "signal.noise_power_w must be > 0");
  require(cfg.pattern.g_max_dbi > 0.0, "pattern.g_max_dbi must be > 0");
  require(cfg.pattern.g_s_db > 0.0 && cfg.pattern.g_v_db > 0.0,
          "pattern attenuation limits must be > 0");
  require(cfg.pattern.theta_3db > 0.0 && cfg.pattern.theta_3db < std::numbers::pi,
          "pattern.theta_3db_deg must be in (0, 180)");
  require(cfg.pattern.phi_3db > 0.0 && cfg.pattern.phi_3db < std::numbers::pi,
          "pattern.phi_3db_deg must be in (0, 180)");
  require(cfg.path_loss.eps0 > 0.0, "path_loss.ref_gain must be > 0");
  require(cfg.path_loss.d0 > 0.0 && cfg.path_loss.d0 < cfg.density.region.r_min,
          "path_loss.ref_distance_m must be positive and below r_min");

  require(cfg.num_drops >= 1, "monte_carlo.drops must be >= 1");
  require(cfg.candidate_count >= cfg.num_surfaces,
          "init.candidates must be >= array.surfaces");
  require(cfg.init_radius > 0.0, "init.radius_m must be > 0");
  require(cfg.init_radius <= cfg.site.inscribed_radius() + 1e-12,
          "init.radius_m must fit inside the site box");

  const auto& opt = cfg.optimizer;
  require(opt.outer_iters >= 0, "optimizer.outer_iters must be >= 0");
  require(opt.inner_iters >= 1, "optimizer.inner_iters must be >= 1");
  require(opt.tau_ini > 0.0 && opt.tau_ini <= 1.0, "optimizer.tau_ini must be in (0,1]");
  require(opt.armijo_slope > 0.0 && opt.armijo_slope < 1.0,
          "optimizer.armijo_slope must be in (0,1)");
  require(opt.armijo_shrink > 0.0 && opt.armijo_shrink < 1.0,
          "optimizer.armijo_shrink must be in (0,1)");
  require(opt.fd_step > 0.0, "optimizer.fd_step must be > 0");
  require(opt.rot_trust > 0.0 && opt.rot_trust <= std::numbers::pi / 4.0,
          "optimizer.rot_trust must be in (0, pi/4]");
  require(opt.max_backtracks >= 1, "optimizer.max_backtracks must be >= 1");
  require(opt.conv_tol >= 0.0, "optimizer.conv_tol must be >= 0");
  require(opt.restarts >= 1, "optimizer.restarts must be >= 1");

  require(!cfg.schemes.empty(), "run.schemes must not be empty");
  for (const auto& s : cfg.schemes) {
    require(s == "proposed" || s == "fpa" || s == "circular" || s == "rotation-only",
            "unknown scheme '" + s + "'");
  }
  require(cfg.sweep == "none" || cfg.sweep == "users" || cfg.sweep == "xi" ||
              cfg.sweep == "power",
          "run.sweep must be none|users|xi|power");
  if (cfg.sweep != "none") {
    require(!cfg.sweep_values.empty(), "run.sweep_values must not be empty for a sweep");
    for (double v : cfg.sweep_values) {
      if (cfg.sweep == "xi") {
        require(v >= 0.0 && v <= 1.0, "xi must be in [0,1]");
      } else {
        require(v > 0.0, "run.sweep_values must be positive");
      }
    }
  }
  require(!cfg.output_dir.empty(), "run.output_dir must not be empty");
}

}  // namespace

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  cfg.site.center = Vec3::Zero();
  cfg.site.half_extents = Vec3(0.5, 0.5, 0.5);

  cfg.density.mu = 35.0;
  cfg.density.xi = 0.2;
  cfg.density.region.r_min = 20.0;
  cfg.density.region.r_max = 200.0;

  const double dist[3] = {40.0, 60.0, 100.0};
  const double az[3] = {30.0, 150.0, 270.0};
  const double el[3] = {10.0, 20.0, 30.0};
  const double rad[3] = {5.0, 10.0, 15.0};
  for (int w = 0; w < 3; ++w) {
    HotspotSpec h;
    const double a = az[w] * kDegToRad;
    const double e = el[w] * kDegToRad;
    h.center = dist[w] * Vec3(std::cos(e) * std::cos(a), std::cos(e) * std::sin(a), std::sin(e));
    h.radius = rad[w];
    h.weight = static_cast<double>(w + 1);
    cfg.density.region.hotspots.push_back(h);
  }
  return cfg;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg = default_config();

  std::string trimmed = text;
  trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
  if (trimmed.empty()) {
    validate(cfg);
    return cfg;
  }

  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigParseError(std::string("config parse error: ") + e.what());
  }
  if (!root.is_object()) throw ConfigParseError("config root must be a JSON object");
  reject_unknown_keys(root, "(root)",
                      {"array", "site", "scenario", "signal", "pattern", "path_loss",
                       "monte_carlo", "init", "optimizer", "run"});

  if (root.contains("array")) {
    const auto& a = root["array"];
    reject_unknown_keys(a, "array",
                        {"surfaces", "antennas_per_surface", "wavelength_m",
                         "antenna_spacing_m", "min_surface_distance_m"});
    cfg.num_surfaces = get_int(a, "surfaces", cfg.num_surfaces);
    cfg.antennas_per_surface = get_int(a, "antennas_per_surface", cfg.antennas_per_surface);
    cfg.wavelength = get_num(a, "wavelength_m", cfg.wavelength);
    cfg.antenna_spacing = get_num(a, "antenna_spacing_m", cfg.wavelength / 2.0);
    cfg.min_surface_distance =
        get_num(a, "min_surface_distance_m",
                (std::sqrt(2.0) / 2.0 + 0.5) * cfg.wavelength);
  }

  if (root.contains("site")) {
    const auto& s = root["site"];
    reject_unknown_keys(s, "site", {"center_m", "half_extents_m"});
    cfg.site.center = get_vec3(s, "center_m", cfg.site.center);
    cfg.site.half_extents = get_vec3(s, "half_extents_m", cfg.site.half_extents);
    // Candidate sphere defaults to the largest one the box can hold; an
    // explicit init.radius_m below still overrides it.
    cfg.init_radius = cfg.site.inscribed_radius();
  }

  if (root.contains("scenario")) {
    const auto& s = root["scenario"];
    reject_unknown_keys(s, "scenario",
                        {"mean_users", "regular_user_ratio", "r_min_m", "r_max_m", "hotspots"});
    cfg.density.mu = get_num(s, "mean_users", cfg.density.mu);
    cfg.density.xi = get_num(s, "regular_user_ratio", cfg.density.xi);
    cfg.density.region.r_min = get_num(s, "r_min_m", cfg.density.region.r_min);
    cfg.density.region.r_max = get_num(s, "r_max_m", cfg.density.region.r_max);
    if (s.contains("hotspots")) {
      if (!s["hotspots"].is_array()) {
        throw ConfigValidationError("scenario.hotspots must be an array");
      }
      cfg.density.region.hotspots.clear();
      for (std::size_t i = 0; i < s["hotspots"].size(); ++i) {
        cfg.density.region.hotspots.push_back(parse_hotspot(s["hotspots"][i], i));
      }
    }
  }

  if (root.contains("signal")) {
    const auto& s = root["signal"];
    reject_unknown_keys(s, "signal", {"tx_power_w", "noise_power_w"});
    cfg.tx_power = get_num(s, "tx_power_w", cfg.tx_power);
    cfg.noise_power = get_num(s, "noise_power_w", cfg.noise_power);
  }

  if (root.contains("pattern")) {
    const auto& p = root["pattern"];
    reject_unknown_keys(p, "pattern",
                        {"g_max_dbi", "front_back_db", "sidelobe_db", "theta_3db_deg",
                         "phi_3db_deg"});
    cfg.pattern.g_max_dbi = get_num(p, "g_max_dbi", cfg.pattern.g_max_dbi);
    cfg.pattern.g_s_db = get_num(p, "front_back_db", cfg.pattern.g_s_db);
    cfg.pattern.g_v_db = get_num(p, "sidelobe_db", cfg.pattern.g_v_db);
    cfg.pattern.theta_3db = get_num(p, "theta_3db_deg", 65.0) * kDegToRad;
    cfg.pattern.phi_3db = get_num(p, "phi_3db_deg", 65.0) * kDegToRad;
  }

  if (root.contains("path_loss")) {
    const auto& p = root["path_loss"];
    reject_unknown_keys(p, "path_loss", {"ref_gain", "exponent", "ref_distance_m"});
    cfg.path_loss.eps0 = get_num(p, "ref_gain", cfg.path_loss.eps0);
    cfg.path_loss.exponent = get_num(p, "exponent", cfg.path_loss.exponent);
    cfg.path_loss.d0 = get_num(p, "ref_distance_m", cfg.path_loss.d0);
  }

  if (root.contains("monte_carlo")) {
    const auto& m = root["monte_carlo"];
    reject_unknown_keys(m, "monte_carlo", {"drops", "seed"});
    cfg.num_drops = get_int(m, "drops", cfg.num_drops);
    if (m.contains("seed")) cfg.master_seed = m["seed"].get<std::uint64_t>();
  }

  if (root.contains("init")) {
    const auto& i = root["init"];
    reject_unknown_keys(i, "init", {"candidates", "radius_m"});
    cfg.candidate_count = get_int(i, "candidates", cfg.candidate_count);
    cfg.init_radius = get_num(i, "radius_m", cfg.init_radius);
  }

  if (root.contains("optimizer")) {
    const auto& o = root["optimizer"];
    reject_unknown_keys(o, "optimizer",
                        {"outer_iters", "inner_iters", "tau_ini", "armijo_slope",
                         "armijo_shrink", "fd_step", "rot_trust", "max_backtracks", "conv_tol",
                         "restarts", "seed"});
    cfg.optimizer.outer_iters = get_int(o, "outer_iters", cfg.optimizer.outer_iters);
    cfg.optimizer.inner_iters = get_int(o, "inner_iters", cfg.optimizer.inner_iters);
    cfg.optimizer.tau_ini = get_num(o, "tau_ini", cfg.optimizer.tau_ini);
    cfg.optimizer.armijo_slope = get_num(o, "armijo_slope", cfg.optimizer.armijo_slope);
    cfg.optimizer.armijo_shrink = get_num(o, "armijo_shrink", cfg.optimizer.armijo_shrink);
    cfg.optimizer.fd_step = get_num(o, "fd_step", cfg.optimizer.fd_step);
    cfg.optimizer.rot_trust = get_num(o, "rot_trust", cfg.optimizer.rot_trust);
    cfg.optimizer.max_backtracks = get_int(o, "max_backtracks", cfg.optimizer.max_backtracks);
    cfg.optimizer.conv_tol = get_num(o, "conv_tol", cfg.optimizer.conv_tol);
    cfg.optimizer.restarts = get_int(o, "restarts", cfg.optimizer.restarts);
    if (o.contains("seed")) cfg.optimizer.seed = o["seed"].get<std::uint64_t>();
  }

  if (root.contains("run")) {
    const auto& r = root["run"];
    reject_unknown_keys(r, "run",
                        {"schemes", "sweep", "sweep_values", "output_dir", "emit_timing"});
    if (r.contains("schemes")) {
      if (!r["schemes"].is_array()) throw ConfigValidationError("run.schemes must be an array");
      cfg.schemes = r["schemes"].get<std::vector<std::string>>();
    }
    if (r.contains("sweep")) cfg.sweep = r["sweep"].get<std::string>();
    if (r.contains("sweep_values")) {
      cfg.sweep_values = r["sweep_values"].get<std::vector<double>>();
    }
    if (r.contains("output_dir")) cfg.output_dir = r["output_dir"].get<std::string>();
    if (r.contains("emit_timing")) cfg.emit_timing = r["emit_timing"].get<bool>();
  }

  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace sixdma
