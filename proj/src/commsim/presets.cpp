#include "antinspect/commsim/presets.hpp"

#include <fmt/core.h>

#include "antinspect/core/errors.hpp"

namespace antinspect::commsim {
namespace {

// 1080p30 H.264 stream; the measured table does not state the bitrate.
constexpr double kVideoBitrate = 8e6;

std::vector<ModeParams> hardware_rows() {
  ModeParams co;
  co.mode = Mode::CO;
  co.method = "YOLOv8-n+BotSort";
  co.video_bitrate = kVideoBitrate;
  co.t_infer_cloud = 0.0141;
  co.power_comm = 3.1;
  co.power_infer = 9.8;

  ModeParams ecc;
  ecc.mode = Mode::ECC;
  ecc.method = "EdgeAnt+AntSort";
  ecc.video_bitrate = kVideoBitrate;
  ecc.t_infer_edge = 0.0513;
  ecc.power_comm = 1.4;
  ecc.power_infer = 12.1;

  ModeParams plus = ecc;
  plus.mode = Mode::ECCPlus;
  plus.power_comm = 0.3;
  return {co, ecc, plus};
}

}  // namespace

std::vector<ModeParams> preset(std::string_view name) {
  auto rows = hardware_rows();
  if (name == "measured") {
    rows[0].measured_t_comm = 1.012;
    rows[1].measured_t_comm = 0.251;
    rows[2].measured_t_comm = 0.062;
    return rows;
  }
  if (name == "analytic") {
    for (auto& r : rows) {
      r.base_rtt = 0.05;
      r.loss_prob = 0.02;
    }
    rows[0].encode_latency = 0.9;
    return rows;
  }
  throw ConfigError(fmt::format("unknown mode preset '{}'", name));
}

std::vector<std::string> preset_names() { return {"measured", "analytic"}; }

}  // namespace antinspect::commsim
