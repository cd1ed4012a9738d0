#include "antinspect/commsim/commsim.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "antinspect/core/errors.hpp"
#include "antinspect/core/rng.hpp"

namespace antinspect::commsim {

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::CO: return "CO";
    case Mode::ECC: return "ECC";
    case Mode::ECCPlus: return "ECCPlus";
  }
  return "?";
}

Mode parse_mode(std::string_view s) {
  if (s == "CO") return Mode::CO;
  if (s == "ECC") return Mode::ECC;
  if (s == "ECCPlus" || s == "ECC+") return Mode::ECCPlus;
  throw ConfigError(fmt::format("unknown mode '{}' (expected CO, ECC or ECCPlus)", s));
}

void ModeParams::validate() const {
  auto fail = [&](std::string_view field, std::string_view rule) {
    throw ConfigError(fmt::format("mode {}: {} {}", to_string(mode), field, rule));
  };
  if (!(uplink_bandwidth > 0.0)) fail("uplink_bandwidth", "must be > 0");
  if (!(loss_prob >= 0.0 && loss_prob < 1.0)) fail("loss_prob", "must lie in [0, 1)");
  for (auto [name, value] : {std::pair{"base_rtt", base_rtt}, std::pair{"t_infer_edge", t_infer_edge},
                             std::pair{"t_infer_cloud", t_infer_cloud}, std::pair{"eta", eta},
                             std::pair{"encode_latency", encode_latency},
                             std::pair{"message_bytes", message_bytes},
                             std::pair{"power_comm", power_comm},
                             std::pair{"power_infer", power_infer}}) {
    if (!(value >= 0.0) || !std::isfinite(value)) fail(name, "must be finite and >= 0");
  }
  if (!(frame_rate > 0.0)) fail("frame_rate", "must be > 0");
  if (measured_t_comm && !(*measured_t_comm >= 0.0)) fail("measured_t_comm", "must be >= 0");
  if (mode == Mode::CO) {
    if (!video_bitrate) fail("video_bitrate", "is required in CO mode");
    if (!(*video_bitrate > 0.0)) fail("video_bitrate", "must be > 0");
  }
}

double e2el(const ModeParams& params, double t_comm, double t_infer) {
  return t_comm + t_infer + params.eta;
}

double qos1_time(double bytes, const ModeParams& params) {
  return (8.0 * bytes / params.uplink_bandwidth + params.base_rtt) / (1.0 - params.loss_prob);
}

double video_backlog_delay(const ModeParams& params, double elapsed) {
  const double excess = params.video_bitrate.value_or(0.0) - params.uplink_bandwidth;
  if (excess <= 0.0) return 0.0;
  return excess * elapsed / params.uplink_bandwidth;
}

double accuracy(std::span<const ksa::Keyframe> uploads, std::span<const GroundTruthLabel> labels) {
  std::map<std::pair<std::int64_t, std::int64_t>, bool> lookup;
  for (const auto& l : labels) lookup[{l.frame_index, l.track_id}] = l.is_interference;
  std::size_t tp = 0;
  std::size_t fn = 0;
  for (const auto& u : uploads) {
    auto it = lookup.find({u.frame_index, u.track_id});
    if (it == lookup.end()) {
      throw MissingLabel(
          fmt::format("no label for upload (frame {}, track {})", u.frame_index, u.track_id));
    }
    (it->second ? tp : fn) += 1;
  }
  if (tp + fn == 0) return 1.0;
  return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

LatencyReport run_mission(const ModeParams& params, const UploadStream& stream,
                          std::span<const GroundTruthLabel> labels, double duration) {
  params.validate();
  LatencyReport r;
  r.mode = params.mode;
  r.method = params.method;
  r.accuracy = accuracy(stream.records, labels);

  const double t0 = stream.frame_timestamps.empty() ? 0.0 : stream.frame_timestamps.front();
  Rng rng(params.seed);
  const double tx = 8.0 * params.message_bytes / params.uplink_bandwidth;
  auto message_time = [&]() {
    if (params.measured_t_comm) return *params.measured_t_comm;
    if (params.stochastic) {
      const auto n = rng.geometric_trials(1.0 - params.loss_prob);
      return static_cast<double>(n) * (tx + params.base_rtt);
    }
    return qos1_time(params.message_bytes, params);
  };

  std::vector<double> comm_times;
  double t_infer = 0.0;
  switch (params.mode) {
    case Mode::CO: {
      t_infer = params.t_infer_cloud;
      const double frame_bits = *params.video_bitrate / params.frame_rate;
      r.saturated = *params.video_bitrate > params.uplink_bandwidth;
      for (double ts : stream.frame_timestamps) {
        const double elapsed = ts - t0;
        const double t_comm =
            params.measured_t_comm
                ? *params.measured_t_comm
                : params.encode_latency + params.base_rtt + frame_bits / params.uplink_bandwidth +
                      video_backlog_delay(params, elapsed);
        comm_times.push_back(t_comm);
        r.upload_times.push_back(elapsed);
      }
      r.total_uplink_bytes = *params.video_bitrate * duration / 8.0;
      r.energy_comm = params.power_comm * duration;
      break;
    }
    case Mode::ECC: {
      t_infer = params.t_infer_edge;
      for (double ts : stream.frame_timestamps) {
        comm_times.push_back(message_time());
        r.upload_times.push_back(ts - t0);
      }
      break;
    }
    case Mode::ECCPlus: {
      t_infer = params.t_infer_edge;
      std::int64_t last_frame = 0;
      bool any = false;
      for (const auto& k : stream.records) {
        if (any && k.frame_index == last_frame) continue;  // batched into one message
        any = true;
        last_frame = k.frame_index;
        comm_times.push_back(message_time());
        r.upload_times.push_back(k.upload_timestamp - t0);
      }
      break;
    }
  }

  r.uploads = comm_times.size();
  for (double c : comm_times) r.per_upload_e2el.push_back(e2el(params, c, t_infer));
  if (!comm_times.empty()) {
    const double n = static_cast<double>(comm_times.size());
    r.mean_e2el = std::accumulate(r.per_upload_e2el.begin(), r.per_upload_e2el.end(), 0.0) / n;
    r.mean_t_comm = std::accumulate(comm_times.begin(), comm_times.end(), 0.0) / n;
    r.mean_t_infer = t_infer;
  }
  if (params.mode != Mode::CO) {
    r.total_uplink_bytes = static_cast<double>(r.uploads) * params.message_bytes;
    const double busy = std::accumulate(comm_times.begin(), comm_times.end(), 0.0);
    r.energy_comm = params.power_comm * std::min(busy, duration);
  }
  r.energy_infer = params.power_infer * duration;
  return r;
}

}  // namespace antinspect::commsim
