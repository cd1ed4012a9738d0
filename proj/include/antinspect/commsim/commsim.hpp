#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "antinspect/ksa/ksa.hpp"

namespace antinspect::commsim {

enum class Mode { CO, ECC, ECCPlus };

std::string_view to_string(Mode m);
/// Accepts "CO", "ECC", "ECCPlus" and "ECC+". Throws ConfigError otherwise.
Mode parse_mode(std::string_view s);

// Parametric description of one deployment mode. Times in seconds, rates in
// bit/s, powers in watts.
struct ModeParams {
  Mode mode = Mode::ECCPlus;
  std::string method;  // free-form label, e.g. the detector+tracker pair
  double uplink_bandwidth = 40e6;
  double base_rtt = 0.05;
  double loss_prob = 0.0;
  std::optional<double> video_bitrate;  // CO only
  double encode_latency = 0.0;          // CO only: capture + encode + stream buffering
  double message_bytes = 256.0;         // one result message
  double t_infer_edge = 0.0;
  double t_infer_cloud = 0.0;
  double eta = 0.0;  // delay error
  double power_comm = 0.0;
  double power_infer = 0.0;
  double frame_rate = 30.0;
  // When set, the communication component is this measured constant instead
  // of the analytic model.
  std::optional<double> measured_t_comm;
  // Sample geometric retransmission counts instead of using expectations.
  bool stochastic = false;
  std::uint64_t seed = 0;

  void validate() const;
};

/// End-to-end latency: communication + inference + delay error.
double e2el(const ModeParams& params, double t_comm, double t_infer);

/// Expected at-least-once delivery time of one message:
/// (8 * bytes / bandwidth + rtt) / (1 - loss).
double qos1_time(double bytes, const ModeParams& params);

/// Fluid-queue delay of the CO video stream at elapsed time t:
/// max(0, bitrate - bandwidth) * t / bandwidth.
double video_backlog_delay(const ModeParams& params, double elapsed);

struct GroundTruthLabel {
  std::int64_t frame_index = 0;
  std::int64_t track_id = 0;
  bool is_interference = false;
};

/// TP / (TP + FN) where TP counts uploads labelled as interference sources and
/// FN counts uploads labelled otherwise. 1.0 when nothing was uploaded.
/// Throws MissingLabel when an upload has no label.
double accuracy(std::span<const ksa::Keyframe> uploads, std::span<const GroundTruthLabel> labels);

/// Everything one mode uploads over a mission.
struct UploadStream {
  std::vector<double> frame_timestamps;  // every processed frame
  std::vector<ksa::Keyframe> records;    // results the mode delivers
};

struct LatencyReport {
  Mode mode = Mode::ECCPlus;
  std::string method;
  std::vector<double> per_upload_e2el;
  std::vector<double> upload_times;  // mission time of each entry above
  double mean_e2el = 0.0;            // 0 when there are no uploads
  double mean_t_comm = 0.0;
  double mean_t_infer = 0.0;
  double accuracy = 1.0;
  double total_uplink_bytes = 0.0;
  double energy_comm = 0.0;
  double energy_infer = 0.0;
  std::size_t uploads = 0;
  bool saturated = false;  // CO stream exceeds the uplink: delay grows without bound
};

// CO streams every frame and infers in the cloud. ECC sends one result
// message per processed frame. ECC+ sends one message per frame that carries
// at least one keyframe. Energy is power x active time: the edge compute is
// busy for the whole mission, the radio for the whole mission under CO and for
// the summed message times (capped at the mission length) otherwise.
LatencyReport run_mission(const ModeParams& params, const UploadStream& stream,
                          std::span<const GroundTruthLabel> labels, double duration);

}  // namespace antinspect::commsim
