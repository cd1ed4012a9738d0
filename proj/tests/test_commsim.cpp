#include <doctest.h>

#include "antinspect/commsim/commsim.hpp"
#include "antinspect/commsim/presets.hpp"
#include "antinspect/core/errors.hpp"

using namespace antinspect;
using namespace antinspect::commsim;

namespace {

ModeParams mode_of(const std::vector<ModeParams>& rows, Mode m) {
  for (const auto& r : rows) {
    if (r.mode == m) return r;
  }
  FAIL("mode missing from preset");
  return {};
}

UploadStream stream_with(int frames, const std::vector<std::int64_t>& keyframe_frames) {
  UploadStream s;
  for (int k = 0; k < frames; ++k) s.frame_timestamps.push_back(k / 30.0);
  std::int64_t id = 1;
  for (auto f : keyframe_frames) {
    s.records.push_back({f, id++, {10, 10, 20, 20}, 0, static_cast<double>(f) / 30.0});
  }
  return s;
}

std::vector<GroundTruthLabel> all_true(const UploadStream& s) {
  std::vector<GroundTruthLabel> labels;
  for (const auto& r : s.records) labels.push_back({r.frame_index, r.track_id, true});
  return labels;
}

}  // namespace

TEST_CASE("mode names round-trip") {
  CHECK(parse_mode("CO") == Mode::CO);
  CHECK(parse_mode("ECC") == Mode::ECC);
  CHECK(parse_mode("ECC+") == Mode::ECCPlus);
  CHECK(parse_mode(to_string(Mode::ECCPlus)) == Mode::ECCPlus);
  CHECK_THROWS_AS(parse_mode("edge"), ConfigError);
}

TEST_CASE("e2el is the plain sum of its parts") {
  ModeParams p;
  p.eta = 0.004;
  CHECK(e2el(p, 0.062, 0.0513) == doctest::Approx(0.062 + 0.0513 + 0.004).epsilon(1e-15));
}

TEST_CASE("qos1 delivery time: lossless, lossy and bandwidth-bound") {
  ModeParams p;
  p.uplink_bandwidth = 40e6;
  p.base_rtt = 0.05;
  CHECK(qos1_time(256, p) == doctest::Approx(2048.0 / 40e6 + 0.05).epsilon(1e-15));
  p.loss_prob = 0.5;  // two attempts expected
  CHECK(qos1_time(256, p) == doctest::Approx(2.0 * (2048.0 / 40e6 + 0.05)).epsilon(1e-15));
  p.loss_prob = 0.0;
  p.base_rtt = 0.0;
  p.uplink_bandwidth = 8e3;  // 1 kB at 8 kb/s
  CHECK(qos1_time(1000, p) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("stochastic retransmissions average to the analytic expectation") {
  ModeParams p;
  p.mode = Mode::ECC;
  p.loss_prob = 0.3;
  p.stochastic = true;
  p.seed = 8;
  const UploadStream s = stream_with(20000, {});
  const LatencyReport r = run_mission(p, s, {}, 20000 / 30.0);
  CHECK(r.mean_t_comm == doctest::Approx(qos1_time(p.message_bytes, p)).epsilon(0.02));
}

TEST_CASE("video backlog grows linearly only when the stream exceeds the uplink") {
  ModeParams p;
  p.mode = Mode::CO;
  p.uplink_bandwidth = 40e6;
  p.video_bitrate = 8e6;
  CHECK(video_backlog_delay(p, 100.0) == 0.0);
  p.video_bitrate = 50e6;
  CHECK(video_backlog_delay(p, 4.0) == doctest::Approx(10e6 * 4.0 / 40e6));
  const LatencyReport r = run_mission(p, stream_with(300, {}), {}, 10.0);
  CHECK(r.saturated);
  CHECK(r.per_upload_e2el.back() > r.per_upload_e2el.front());
}

TEST_CASE("accuracy counts labelled uploads and requires every label") {
  std::vector<ksa::Keyframe> uploads;
  std::vector<GroundTruthLabel> labels;
  for (int i = 0; i < 22; ++i) {
    uploads.push_back({i, i, {0, 0, 1, 1}, 0, 0.0});
    labels.push_back({i, i, i < 19});
  }
  CHECK(accuracy(uploads, labels) == doctest::Approx(19.0 / 22.0).epsilon(1e-15));
  CHECK(accuracy(uploads, labels) * 100.0 == doctest::Approx(86.4).epsilon(0.001));
  CHECK(accuracy({}, {}) == 1.0);
  labels.pop_back();
  CHECK_THROWS_AS(accuracy(uploads, labels), MissingLabel);
}

TEST_CASE("measured preset reproduces the measured mean latencies") {
  const auto rows = preset("measured");
  const UploadStream s = stream_with(1200, {10, 10, 40, 300, 900});
  const auto labels = all_true(s);
  const auto co = run_mission(mode_of(rows, Mode::CO), s, labels, 40.0);
  const auto ecc = run_mission(mode_of(rows, Mode::ECC), s, labels, 40.0);
  const auto plus = run_mission(mode_of(rows, Mode::ECCPlus), s, labels, 40.0);
  CHECK(co.mean_e2el == doctest::Approx(1.0261).epsilon(1e-9));
  CHECK(ecc.mean_e2el == doctest::Approx(0.3023).epsilon(1e-9));
  CHECK(plus.mean_e2el == doctest::Approx(0.1133).epsilon(1e-9));
  CHECK(1.0 - plus.mean_e2el / co.mean_e2el == doctest::Approx(0.889).epsilon(0.001 / 0.889));
  CHECK(1.0 - plus.mean_e2el / ecc.mean_e2el == doctest::Approx(0.625).epsilon(0.001 / 0.625));
  CHECK(plus.uploads == 4);  // two keyframes on frame 10 share one message
}

TEST_CASE("byte and upload ordering across modes") {
  for (const auto& name : preset_names()) {
    const auto rows = preset(name);
    const UploadStream s = stream_with(600, {5, 6, 6, 100, 101, 599});
    const auto labels = all_true(s);
    const auto co = run_mission(mode_of(rows, Mode::CO), s, labels, 20.0);
    const auto ecc = run_mission(mode_of(rows, Mode::ECC), s, labels, 20.0);
    const auto plus = run_mission(mode_of(rows, Mode::ECCPlus), s, labels, 20.0);
    CHECK(plus.total_uplink_bytes < ecc.total_uplink_bytes);
    CHECK(ecc.total_uplink_bytes <= co.total_uplink_bytes);
    CHECK(plus.uploads <= ecc.uploads);
    CHECK(plus.energy_comm <= ecc.energy_comm);
  }
}

TEST_CASE("an empty mission uploads nothing") {
  const auto rows = preset("analytic");
  const UploadStream s;
  for (const auto& p : rows) {
    const auto r = run_mission(p, s, {}, 1.0);
    CHECK(r.uploads == 0);
    CHECK(r.mean_e2el == 0.0);
    CHECK(r.accuracy == 1.0);
  }
}

TEST_CASE("mode parameters are validated") {
  ModeParams co;
  co.mode = Mode::CO;
  CHECK_THROWS_AS(co.validate(), ConfigError);  // no video bitrate
  ModeParams p;
  p.loss_prob = 1.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  CHECK_THROWS_AS(preset("nope"), ConfigError);
}
