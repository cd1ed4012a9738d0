#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "antinspect/antsort/tracker.hpp"
#include "antinspect/app/synth.hpp"
#include "antinspect/commsim/commsim.hpp"
#include "antinspect/ksa/ksa.hpp"
#include "antinspect/netcost/netcost.hpp"
#include "antinspect/swarmplan/objective.hpp"

namespace antinspect::app {

enum class MissingImuPolicy { Error, Zero };

struct MissionConfig {
  std::filesystem::path detections;
  std::filesystem::path imu;
  std::filesystem::path truth;
  antsort::TrackerConfig tracker;
  ksa::KsaConfig ksa;
  std::vector<commsim::ModeParams> modes;  // from "preset" and/or "modes"
  commsim::Mode mode = commsim::Mode::ECCPlus;  // the one `track` runs
  double label_iou = 0.5;  // upload counts as a true source at this IoU with a target
  MissingImuPolicy missing_imu = MissingImuPolicy::Error;
  std::optional<double> duration;  // defaults to frame count * tracker.dt

  [[nodiscard]] const commsim::ModeParams& selected_mode() const;
};

struct Scenario {
  swarmplan::AreaSpec area;
  std::vector<swarmplan::BaseStation> stations;
  swarmplan::PlannerConfig planner;
};

struct NamedConvSpec {
  std::string name;
  netcost::ConvSpec spec;
};

// Loaders validate every field and reject unknown keys; error messages carry
// the JSON path of the offending value. Relative file paths resolve against
// the config file's directory.
MissionConfig load_mission(const std::filesystem::path& path);
MissionConfig parse_mission(const nlohmann::json& j, const std::filesystem::path& base_dir);
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(const nlohmann::json& j);
std::vector<NamedConvSpec> load_conv_specs(const std::filesystem::path& path);
SynthConfig parse_synth(const nlohmann::json& j);

nlohmann::json to_json(const commsim::ModeParams& m);
nlohmann::json to_json(const antsort::TrackerConfig& c);
nlohmann::json to_json(const ksa::KsaConfig& c);
nlohmann::json to_json(const Scenario& s);

nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace antinspect::app
