#include "antinspect/app/config.hpp"

#include <fmt/core.h>

#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "antinspect/commsim/presets.hpp"
#include "antinspect/core/errors.hpp"
#include "antinspect/core/io.hpp"

namespace antinspect::app {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string join(const std::string& path, std::string_view key) {
  return fmt::format("{}.{}", path, key);
}

// Reads fields out of one JSON object, remembering which keys were consumed so
// that leftovers can be reported as unknown.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(fmt::format("{}: expected an object", path_));
  }

  [[nodiscard]] bool has(std::string_view key) const { return j_.contains(key); }
  [[nodiscard]] const std::string& path() const { return path_; }

  const json& raw(std::string_view key) {
    used_.emplace(key);
    return j_.at(std::string(key));
  }

  void num(std::string_view key, double& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError(fmt::format("{}: expected a number", join(path_, key)));
    out = v.get<double>();
    if (!std::isfinite(out)) throw ConfigError(fmt::format("{}: must be finite", join(path_, key)));
  }

  void num(std::string_view key, std::optional<double>& out) {
    if (!has(key)) return;
    if (raw(key).is_null()) {
      out.reset();
      return;
    }
    double v = 0.0;
    num(key, v);
    out = v;
  }

  template <typename Int>
  void integer(std::string_view key, Int& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_number_integer()) {
      throw ConfigError(fmt::format("{}: expected an integer", join(path_, key)));
    }
    if constexpr (std::is_unsigned_v<Int>) {
      if (v.is_number_unsigned() || v.get<std::int64_t>() >= 0) {
        out = v.get<Int>();
        return;
      }
      throw ConfigError(fmt::format("{}: must be non-negative", join(path_, key)));
    } else {
      const auto x = v.get<std::int64_t>();
      if (x < std::numeric_limits<Int>::min() || x > std::numeric_limits<Int>::max()) {
        throw ConfigError(fmt::format("{}: out of range", join(path_, key)));
      }
      out = static_cast<Int>(x);
    }
  }

  void boolean(std::string_view key, bool& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_boolean()) throw ConfigError(fmt::format("{}: expected true or false", join(path_, key)));
    out = v.get<bool>();
  }

  void str(std::string_view key, std::string& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError(fmt::format("{}: expected a string", join(path_, key)));
    out = v.get<std::string>();
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.contains(it.key())) {
        throw ConfigError(fmt::format("{}: unknown key", join(path_, it.key())));
      }
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string, std::less<>> used_;
};

// Runs a validate() and prefixes its message with the config path.
void checked(const std::string& path, const std::function<void()>& validate) {
  try {
    validate();
  } catch (const Error& e) {
    throw ConfigError(fmt::format("{}: {}", path, e.what()));
  }
}

antsort::TrackerConfig parse_tracker(const json& j, const std::string& path) {
  antsort::TrackerConfig c;
  Obj o(j, path);
  o.num("epsilon", c.epsilon);
  o.num("iou_gate_high", c.iou_gate_high);
  o.num("iou_gate_low", c.iou_gate_low);
  o.integer("max_lost_frames", c.max_lost_frames);
  o.integer("confirm_hits", c.confirm_hits);
  o.num("imu_scale", c.imu_scale);
  o.num("dt", c.dt);
  o.num("process_noise", c.process_noise);
  o.num("measurement_noise", c.measurement_noise);
  o.boolean("imu_compensation", c.imu_compensation);
  o.boolean("imu_z_to_size", c.imu_z_to_size);
  o.finish();
  checked(path, [&] { c.validate(); });
  return c;
}

ksa::KsaConfig parse_ksa(const json& j, const std::string& path) {
  ksa::KsaConfig c;
  Obj o(j, path);
  if (o.has("tau") && o.raw("tau").is_null()) {
    c.tau = std::numeric_limits<double>::infinity();
  } else {
    o.num("tau", c.tau);
  }
  o.integer("mu", c.mu);
  o.boolean("strict_consecutive", c.strict_consecutive);
  o.finish();
  checked(path, [&] { c.validate(); });
  return c;
}

void apply_mode_fields(Obj& o, commsim::ModeParams& m) {
  o.str("method", m.method);
  o.num("uplink_bandwidth", m.uplink_bandwidth);
  o.num("base_rtt", m.base_rtt);
  o.num("loss_prob", m.loss_prob);
  o.num("video_bitrate", m.video_bitrate);
  o.num("encode_latency", m.encode_latency);
  o.num("message_bytes", m.message_bytes);
  o.num("t_infer_edge", m.t_infer_edge);
  o.num("t_infer_cloud", m.t_infer_cloud);
  o.num("eta", m.eta);
  o.num("power_comm", m.power_comm);
  o.num("power_infer", m.power_infer);
  o.num("frame_rate", m.frame_rate);
  o.num("measured_t_comm", m.measured_t_comm);
  o.boolean("stochastic", m.stochastic);
  o.integer("seed", m.seed);
}

commsim::Mode parse_mode_at(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(fmt::format("{}: expected a mode name", path));
  try {
    return commsim::parse_mode(v.get<std::string>());
  } catch (const Error& e) {
    throw ConfigError(fmt::format("{}: {}", path, e.what()));
  }
}

std::vector<commsim::ModeParams> preset_at(const std::string& name, const std::string& path) {
  try {
    return commsim::preset(name);
  } catch (const Error& e) {
    throw ConfigError(fmt::format("{}: {}", path, e.what()));
  }
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

void require_file(const fs::path& p, const std::string& path) {
  if (!fs::is_regular_file(p)) {
    throw ConfigError(fmt::format("{}: file not found: {}", path, p.string()));
  }
}

}  // namespace

const commsim::ModeParams& MissionConfig::selected_mode() const {
  for (const auto& m : modes) {
    if (m.mode == mode) return m;
  }
  throw ConfigError(fmt::format("$.mode: no parameters for mode {}", commsim::to_string(mode)));
}

nlohmann::json read_json(const fs::path& path) {
  const std::string text = io::read_file(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

MissionConfig parse_mission(const json& j, const fs::path& base_dir) {
  MissionConfig c;
  Obj o(j, "$");
  std::string det, imu, truth;
  o.str("detections", det);
  o.str("imu", imu);
  o.str("truth", truth);
  if (det.empty()) throw ConfigError("$.detections: required");
  if (truth.empty()) throw ConfigError("$.truth: required");
  c.detections = resolve(base_dir, det);
  c.truth = resolve(base_dir, truth);
  require_file(c.detections, "$.detections");
  require_file(c.truth, "$.truth");

  std::string missing = "error";
  o.str("missing_imu", missing);
  if (missing == "error") {
    c.missing_imu = MissingImuPolicy::Error;
  } else if (missing == "zero") {
    c.missing_imu = MissingImuPolicy::Zero;
  } else {
    throw ConfigError("$.missing_imu: expected \"error\" or \"zero\"");
  }
  if (!imu.empty()) {
    c.imu = resolve(base_dir, imu);
    require_file(c.imu, "$.imu");
  } else if (c.missing_imu == MissingImuPolicy::Error) {
    throw ConfigError("$.imu: required unless missing_imu is \"zero\"");
  }

  if (o.has("tracker")) c.tracker = parse_tracker(o.raw("tracker"), "$.tracker");
  if (o.has("ksa")) c.ksa = parse_ksa(o.raw("ksa"), "$.ksa");

  std::string preset_name;
  o.str("preset", preset_name);
  if (!preset_name.empty()) c.modes = preset_at(preset_name, "$.preset");

  if (o.has("modes")) {
    const json& arr = o.raw("modes");
    if (!arr.is_array()) throw ConfigError("$.modes: expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = fmt::format("$.modes[{}]", i);
      Obj mo(arr[i], path);
      if (!mo.has("mode")) throw ConfigError(fmt::format("{}.mode: required", path));
      const commsim::Mode mode = parse_mode_at(mo.raw("mode"), path + ".mode");
      // Fields layer over the preset entry for the same mode, if any.
      auto it = std::find_if(c.modes.begin(), c.modes.end(),
                             [&](const auto& m) { return m.mode == mode; });
      if (it == c.modes.end()) {
        commsim::ModeParams fresh;
        fresh.mode = mode;
        c.modes.push_back(fresh);
        it = std::prev(c.modes.end());
      }
      apply_mode_fields(mo, *it);
      mo.finish();
    }
  }
  if (c.modes.empty()) throw ConfigError("$: either preset or modes is required");
  for (std::size_t i = 0; i < c.modes.size(); ++i) {
    checked(fmt::format("$.modes[{}]", i), [&] { c.modes[i].validate(); });
  }

  if (o.has("mode")) c.mode = parse_mode_at(o.raw("mode"), "$.mode");
  (void)c.selected_mode();

  o.num("label_iou", c.label_iou);
  if (!(c.label_iou > 0.0 && c.label_iou <= 1.0)) {
    throw ConfigError("$.label_iou: must lie in (0, 1]");
  }
  o.num("duration", c.duration);
  if (c.duration && *c.duration <= 0.0) throw ConfigError("$.duration: must be positive");
  o.finish();
  return c;
}

MissionConfig load_mission(const fs::path& path) {
  return parse_mission(read_json(path), path.parent_path());
}

Scenario parse_scenario(const json& j) {
  Scenario s;
  Obj o(j, "$");
  if (o.has("area")) {
    Obj a(o.raw("area"), "$.area");
    a.num("side", s.area.side);
    a.num("cell", s.area.cell);
    a.num("radius", s.area.radius);
    a.finish();
    checked("$.area", [&] { s.area.validate(); });
  }
  if (!o.has("stations")) throw ConfigError("$.stations: required");
  const json& st = o.raw("stations");
  if (!st.is_array() || st.empty()) throw ConfigError("$.stations: expected a non-empty array");
  for (std::size_t i = 0; i < st.size(); ++i) {
    const std::string path = fmt::format("$.stations[{}]", i);
    Obj so(st[i], path);
    if (!so.has("x") || !so.has("y")) throw ConfigError(path + ": x and y are required");
    swarmplan::BaseStation b;
    so.num("x", b.position.x);
    so.num("y", b.position.y);
    so.num("carrier_freq", b.carrier_freq);
    so.finish();
    if (!(b.carrier_freq > 0.0)) throw ConfigError(path + ".carrier_freq: must be positive");
    s.stations.push_back(b);
  }
  if (o.has("planner")) {
    auto& p = s.planner;
    Obj po(o.raw("planner"), "$.planner");
    po.integer("n_uavs", p.n_uavs);
    po.integer("n_waypoints", p.n_waypoints);
    po.integer("swarm_size", p.swarm_size);
    po.integer("iterations", p.iterations);
    po.num("omega", p.omega);
    po.num("c1", p.c1);
    po.num("c2", p.c2);
    po.num("velocity_limit", p.velocity_limit);
    po.num("alpha1", p.alpha1);
    po.num("alpha2", p.alpha2);
    po.num("alpha3", p.alpha3);
    po.num("alpha4", p.alpha4);
    po.num("alpha5", p.alpha5);
    po.num("fspl_sign", p.fspl_sign);
    po.num("collision_c", p.collision_c);
    po.num("collision_q", p.collision_q);
    po.num("min_separation", p.min_separation);
    std::string coverage;
    po.str("coverage", coverage);
    if (coverage == "waypoints") {
      p.coverage = swarmplan::CoverageModel::Waypoints;
    } else if (coverage == "swept" || coverage.empty()) {
      p.coverage = swarmplan::CoverageModel::Swept;
    } else {
      throw ConfigError("$.planner.coverage: expected \"waypoints\" or \"swept\"");
    }
    po.num("uav_speed", p.uav_speed);
    po.num("battery_wh", p.battery_wh);
    po.num("flight_power_w", p.flight_power_w);
    po.num("endurance_penalty", p.endurance_penalty);
    po.num("tx_power_w", p.tx_power_w);
    po.num("antenna_gain", p.antenna_gain);
    po.num("noise_power_w", p.noise_power_w);
    po.num("carrier_freq", p.carrier_freq);
    po.finish();
  }
  o.integer("seed", s.planner.rng_seed);
  o.finish();
  checked("$.planner", [&] { s.planner.validate(); });
  return s;
}

Scenario load_scenario(const fs::path& path) { return parse_scenario(read_json(path)); }

std::vector<NamedConvSpec> load_conv_specs(const fs::path& path) {
  const std::string text = io::read_file(path);
  std::vector<NamedConvSpec> out;
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return out;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
  std::string base = "$";
  const json* arr = &j;
  if (j.is_object()) {
    Obj o(j, "$");
    if (o.has("specs")) arr = &o.raw("specs");
    o.finish();
    base = "$.specs";
    if (arr == &j) return out;
  }
  if (!arr->is_array()) throw ConfigError(base + ": expected an array");
  for (std::size_t i = 0; i < arr->size(); ++i) {
    const std::string p = fmt::format("{}[{}]", base, i);
    Obj so((*arr)[i], p);
    NamedConvSpec n;
    n.name = fmt::format("spec{}", i);
    so.str("name", n.name);
    for (const char* key : {"width", "height", "in_channels", "out_channels"}) {
      if (!so.has(key)) throw ConfigError(fmt::format("{}.{}: required", p, key));
    }
    so.integer("width", n.spec.width);
    so.integer("height", n.spec.height);
    so.integer("in_channels", n.spec.in_channels);
    so.integer("out_channels", n.spec.out_channels);
    so.integer("kernel", n.spec.kernel);
    so.integer("part", n.spec.part);
    so.finish();
    checked(p, [&] { n.spec.validate(); });
    out.push_back(std::move(n));
  }
  return out;
}

SynthConfig parse_synth(const json& j) {
  SynthConfig c;
  Obj o(j, "$");
  o.integer("seed", c.seed);
  o.num("duration", c.duration);
  o.num("fps", c.fps);
  o.integer("n_targets", c.n_targets);
  o.num("image_width", c.image_width);
  o.num("image_height", c.image_height);
  o.num("pan_speed", c.pan_speed);
  o.num("accel_max", c.accel_max);
  o.num("accel_hold", c.accel_hold);
  o.num("imu_scale", c.imu_scale);
  o.num("imu_noise", c.imu_noise);
  o.num("position_noise", c.position_noise);
  o.num("size_noise", c.size_noise);
  o.num("miss_prob", c.miss_prob);
  o.num("score_min", c.score_min);
  o.num("score_max", c.score_max);
  o.num("clutter_rate", c.clutter_rate);
  o.integer("clutter_max_frames", c.clutter_max_frames);
  o.num("oversize_rate", c.oversize_rate);
  o.integer("oversize_max_frames", c.oversize_max_frames);
  o.finish();
  checked("$", [&] { c.validate(); });
  return c;
}

nlohmann::json to_json(const commsim::ModeParams& m) {
  json j{{"mode", commsim::to_string(m.mode)},
         {"method", m.method},
         {"uplink_bandwidth", m.uplink_bandwidth},
         {"base_rtt", m.base_rtt},
         {"loss_prob", m.loss_prob},
         {"encode_latency", m.encode_latency},
         {"message_bytes", m.message_bytes},
         {"t_infer_edge", m.t_infer_edge},
         {"t_infer_cloud", m.t_infer_cloud},
         {"eta", m.eta},
         {"power_comm", m.power_comm},
         {"power_infer", m.power_infer},
         {"frame_rate", m.frame_rate},
         {"stochastic", m.stochastic},
         {"seed", m.seed}};
  j["video_bitrate"] = m.video_bitrate ? json(*m.video_bitrate) : json(nullptr);
  j["measured_t_comm"] = m.measured_t_comm ? json(*m.measured_t_comm) : json(nullptr);
  return j;
}

nlohmann::json to_json(const antsort::TrackerConfig& c) {
  return json{{"epsilon", c.epsilon},
              {"iou_gate_high", c.iou_gate_high},
              {"iou_gate_low", c.iou_gate_low},
              {"max_lost_frames", c.max_lost_frames},
              {"confirm_hits", c.confirm_hits},
              {"imu_scale", c.imu_scale},
              {"dt", c.dt},
              {"process_noise", c.process_noise},
              {"measurement_noise", c.measurement_noise},
              {"imu_compensation", c.imu_compensation},
              {"imu_z_to_size", c.imu_z_to_size}};
}

nlohmann::json to_json(const ksa::KsaConfig& c) {
  return json{{"tau", std::isfinite(c.tau) ? json(c.tau) : json(nullptr)},
              {"mu", c.mu},
              {"strict_consecutive", c.strict_consecutive}};
}

nlohmann::json to_json(const Scenario& s) {
  json stations = json::array();
  for (const auto& b : s.stations) {
    stations.push_back({{"x", b.position.x}, {"y", b.position.y}, {"carrier_freq", b.carrier_freq}});
  }
  const auto& p = s.planner;
  return json{
      {"area", {{"side", s.area.side}, {"cell", s.area.cell}, {"radius", s.area.radius}}},
      {"stations", stations},
      {"seed", p.rng_seed},
      {"planner",
       {{"n_uavs", p.n_uavs},
        {"n_waypoints", p.n_waypoints},
        {"swarm_size", p.swarm_size},
        {"iterations", p.iterations},
        {"omega", p.omega},
        {"c1", p.c1},
        {"c2", p.c2},
        {"velocity_limit", p.velocity_limit},
        {"alpha1", p.alpha1},
        {"alpha2", p.alpha2},
        {"alpha3", p.alpha3},
        {"alpha4", p.alpha4},
        {"alpha5", p.alpha5},
        {"fspl_sign", p.fspl_sign},
        {"collision_c", p.collision_c},
        {"collision_q", p.collision_q},
        {"min_separation", p.min_separation},
        {"coverage", p.coverage == swarmplan::CoverageModel::Swept ? "swept" : "waypoints"},
        {"uav_speed", p.uav_speed},
        {"battery_wh", p.battery_wh},
        {"flight_power_w", p.flight_power_w},
        {"endurance_penalty", p.endurance_penalty},
        {"tx_power_w", p.tx_power_w},
        {"antenna_gain", p.antenna_gain},
        {"noise_power_w", p.noise_power_w},
        {"carrier_freq", p.carrier_freq}}}};
}

}  // namespace antinspect::app
