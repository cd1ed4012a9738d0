#include <doctest.h>

#include <map>

#include "antinspect/antsort/tracker.hpp"
#include "antinspect/core/errors.hpp"
#include "antinspect/core/rng.hpp"

using namespace antinspect;
using namespace antinspect::antsort;

namespace {

FrameRecord frame(std::int64_t k, std::vector<Detection> dets) {
  return {k, static_cast<double>(k) / 30.0, std::move(dets)};
}

ImuSample still(std::int64_t k) { return {k, 0.0, 0.0, 0.0}; }

Detection det(double cx, double cy, double score = 0.9, double size = 40.0) {
  return {{cx, cy, size, size}, score, antenna_class::kYagi};
}

}  // namespace

TEST_CASE("lifecycle transitions follow the state machine") {
  using S = TrackStatus;
  CHECK(transition_allowed(S::Tentative, S::Confirmed));
  CHECK(transition_allowed(S::Tentative, S::Removed));
  CHECK_FALSE(transition_allowed(S::Tentative, S::Lost));
  CHECK(transition_allowed(S::Confirmed, S::Lost));
  CHECK(transition_allowed(S::Lost, S::Confirmed));
  CHECK(transition_allowed(S::Lost, S::Removed));
  CHECK_FALSE(transition_allowed(S::Removed, S::Confirmed));
}

TEST_CASE("a steady target is confirmed after confirm_hits frames and keeps one id") {
  TrackerConfig cfg;
  Tracker tr(cfg);
  for (int k = 0; k < 10; ++k) {
    const auto r = tr.step(frame(k, {det(100 + 2.0 * k, 100)}), still(k));
    REQUIRE(r.active_tracks.size() == 1);
    CHECK(r.active_tracks[0].id == 1);
    CHECK(r.newly_matched.size() == 1);
    CHECK(r.active_tracks[0].status ==
          (k + 1 >= cfg.confirm_hits ? TrackStatus::Confirmed : TrackStatus::Tentative));
  }
}

TEST_CASE("a tentative track that misses a frame is removed") {
  Tracker tr(TrackerConfig{});
  tr.step(frame(0, {det(100, 100)}), still(0));
  const auto r = tr.step(frame(1, {}), still(1));
  CHECK(r.active_tracks.empty());
}

TEST_CASE("confirmed tracks go lost, recover with the same id, and expire") {
  TrackerConfig cfg;
  cfg.max_lost_frames = 5;
  Tracker tr(cfg);
  std::int64_t k = 0;
  auto step = [&](std::vector<Detection> dets) {
    const auto r = tr.step(frame(k, std::move(dets)), still(k));
    ++k;
    return r;
  };
  for (int i = 0; i < 4; ++i) step({det(200, 200)});
  auto r = step({});
  REQUIRE(r.active_tracks.size() == 1);
  CHECK(r.active_tracks[0].status == TrackStatus::Lost);
  r = step({det(200, 200)});
  REQUIRE(r.active_tracks.size() == 1);
  CHECK(r.active_tracks[0].id == 1);
  CHECK(r.active_tracks[0].status == TrackStatus::Confirmed);
  for (int i = 0; i < 5; ++i) {
    r = step({});
    CHECK(r.active_tracks.size() == 1);
  }
  r = step({});
  CHECK(r.active_tracks.empty());
}

TEST_CASE("low-score detections extend existing tracks but never start new ones") {
  Tracker tr(TrackerConfig{});
  for (int k = 0; k < 3; ++k) tr.step(frame(k, {det(300, 300)}), still(k));
  const auto r = tr.step(frame(3, {det(301, 300, 0.2), det(800, 800, 0.3)}), still(3));
  REQUIRE(r.active_tracks.size() == 1);
  REQUIRE(r.newly_matched.size() == 1);
  CHECK(r.newly_matched[0].track_id == 1);
  CHECK(r.newly_matched[0].detection.score == 0.2);
}

TEST_CASE("the second stage uses the lower gate") {
  TrackerConfig cfg;
  cfg.iou_gate_high = 0.9;
  cfg.iou_gate_low = 0.2;
  Tracker tr(cfg);
  for (int k = 0; k < 3; ++k) tr.step(frame(k, {det(300, 300)}), still(k));
  // IoU with the track is about 0.6: too low for stage one, fine for stage two.
  const auto r = tr.step(frame(3, {det(310, 300)}), still(3));
  REQUIRE(r.newly_matched.size() == 1);
  CHECK(r.newly_matched[0].track_id == 1);
}

TEST_CASE("associate reports matches by track id and leftovers in index order") {
  TrackerConfig cfg;
  const auto filter = cfg.make_filter();
  std::vector<Track> tracks(2);
  tracks[0].id = 7;
  tracks[0].state = filter.initiate({100, 100, 40, 40});
  tracks[1].id = 3;
  tracks[1].state = filter.initiate({400, 100, 40, 40});
  const std::vector<Detection> dets{det(900, 900), det(401, 100), det(101, 100), det(50, 600, 0.1)};
  const Association a = associate(tracks, dets, cfg);
  REQUIRE(a.matches.size() == 2);
  CHECK(a.matches[0] == Match{3, 1});
  CHECK(a.matches[1] == Match{7, 2});
  CHECK(a.unmatched_tracks.empty());
  CHECK(a.unmatched_dets == std::vector<std::size_t>{0, 3});
}

TEST_CASE("out-of-order frames and missing IMU samples are rejected") {
  Tracker tr(TrackerConfig{});
  tr.step(frame(5, {}), still(5));
  CHECK_THROWS_AS(tr.step(frame(5, {}), still(5)), OutOfOrderFrame);
  CHECK_THROWS_AS(tr.step(frame(4, {}), still(4)), OutOfOrderFrame);
  CHECK_THROWS_AS(tr.step(frame(6, {}), still(7)), MissingImu);
  CHECK_THROWS_AS(Tracker(TrackerConfig{.epsilon = 1.5}), ConfigError);
}

TEST_CASE("crossing targets keep their identities") {
  // Two targets swap sides horizontally while separated vertically by less
  // than a box height, so their boxes overlap near the crossing.
  Tracker tr(TrackerConfig{});
  std::map<std::int64_t, int> owner;  // track id -> target
  int switches = 0;
  for (int k = 0; k < 120; ++k) {
    const double t = k;
    std::vector<Detection> dets{det(100 + 6.0 * t, 300, 0.9), det(820 - 6.0 * t, 320, 0.9)};
    const auto r = tr.step(frame(k, dets), still(k));
    for (const auto& s : r.newly_matched) {
      const int target = s.detection.bbox.cy == dets[0].bbox.cy ? 0 : 1;
      auto [it, fresh] = owner.try_emplace(s.track_id, target);
      if (!fresh && it->second != target) {
        ++switches;
        it->second = target;
      }
    }
  }
  CHECK(switches == 0);
  CHECK(owner.size() == 2);
}

TEST_CASE("IMU compensation keeps tracks locked through a sharp pan") {
  // The scene accelerates hard; without the control input the predicted boxes
  // fall behind and the tracks fragment.
  const double s = 50.0, dt = 1.0 / 30.0, a = 60.0;  // 3000 px/s^2 in the image
  auto run = [&](bool compensate) {
    TrackerConfig cfg;
    cfg.imu_compensation = compensate;
    Tracker tr(cfg);
    double x = 100.0, v = 0.0;
    std::int64_t max_id = 0;
    for (int k = 0; k < 30; ++k) {
      ImuSample imu{k, k == 0 ? 0.0 : a, 0.0, 0.0};
      const auto r = tr.step(frame(k, {{{x, 300, 30, 30}, 0.9, 0}}), imu);
      for (const auto& t : r.active_tracks) max_id = std::max(max_id, t.id);
      x += v * dt + 0.5 * s * a * dt * dt;
      v += s * a * dt;
    }
    return max_id;
  };
  CHECK(run(true) == 1);
  CHECK(run(false) > 1);
}

TEST_CASE("zero IMU tracker output is bit-identical to the compensation-free tracker") {
  Rng rng(17);
  TrackerConfig with, without;
  without.imu_compensation = false;
  Tracker a(with), b(without);
  for (int k = 0; k < 1000; ++k) {
    std::vector<Detection> dets;
    const auto n = rng.below(6);
    for (std::uint64_t i = 0; i < n; ++i) {
      dets.push_back({{rng.uniform(0, 1000), rng.uniform(0, 1000), rng.uniform(10, 80),
                       rng.uniform(10, 80)},
                      rng.uniform(),
                      0});
    }
    const auto ra = a.step(frame(k, dets), still(k));
    const auto rb = b.step(frame(k, dets), still(k));
    REQUIRE(ra.active_tracks.size() == rb.active_tracks.size());
    for (std::size_t i = 0; i < ra.active_tracks.size(); ++i) {
      CHECK(ra.active_tracks[i].id == rb.active_tracks[i].id);
      CHECK(ra.active_tracks[i].state.mean == rb.active_tracks[i].state.mean);
      CHECK(ra.active_tracks[i].state.covariance == rb.active_tracks[i].state.covariance);
    }
  }
}
