#include "antinspect/app/synth.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>

#include "antinspect/core/errors.hpp"
#include "antinspect/core/rng.hpp"

namespace antinspect::app {
namespace {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// A box fixed in world pixel coordinates that exists over [first, last].
struct WorldObject {
  BoundingBox box;
  ClassId class_id = 0;
  double score = 0.0;
  std::int64_t first = 0;
  std::int64_t last = 0;
};

bool overlaps(const BoundingBox& a, const BoundingBox& b, double gap) {
  return std::abs(a.cx - b.cx) < (a.w + b.w) / 2.0 + gap &&
         std::abs(a.cy - b.cy) < (a.h + b.h) / 2.0 + gap;
}

BoundingBox shifted(const BoundingBox& b, Vec2 offset) {
  return {b.cx + offset.x, b.cy + offset.y, b.w, b.h};
}

bool fully_visible(const BoundingBox& b, const SynthConfig& c) {
  return b.cx - b.w / 2.0 >= 0.0 && b.cx + b.w / 2.0 <= c.image_width &&
         b.cy - b.h / 2.0 >= 0.0 && b.cy + b.h / 2.0 <= c.image_height;
}

// Size ranges per antenna class; all stay below the default pixel threshold.
BoundingBox target_size(ClassId cls, Rng& rng) {
  switch (cls) {
    case antenna_class::kYagi:
      return {0, 0, rng.uniform(70.0, 115.0), rng.uniform(40.0, 90.0)};
    case antenna_class::kPlateLog:
      return {0, 0, rng.uniform(50.0, 90.0), rng.uniform(60.0, 110.0)};
    default:
      return {0, 0, rng.uniform(30.0, 60.0), rng.uniform(30.0, 60.0)};
  }
}

}  // namespace

void SynthConfig::validate() const {
  auto fail = [](const char* what) { throw ConfigError(what); };
  if (!(duration > 0.0)) fail("duration must be positive");
  if (!(fps > 0.0)) fail("fps must be positive");
  if (n_targets < 0) fail("n_targets must be non-negative");
  if (!(image_width > 0.0 && image_height > 0.0)) fail("image size must be positive");
  if (!(pan_speed >= 0.0 && accel_max >= 0.0)) fail("pan_speed and accel_max must be non-negative");
  if (!(accel_hold > 0.0)) fail("accel_hold must be positive");
  if (!(imu_scale > 0.0)) fail("imu_scale must be positive");
  if (!(imu_noise >= 0.0 && position_noise >= 0.0 && size_noise >= 0.0)) {
    fail("noise levels must be non-negative");
  }
  if (!(miss_prob >= 0.0 && miss_prob <= 1.0)) fail("miss_prob must lie in [0, 1]");
  if (!(score_min >= 0.0 && score_min <= score_max && score_max <= 1.0)) {
    fail("scores must satisfy 0 <= score_min <= score_max <= 1");
  }
  if (!(clutter_rate >= 0.0 && clutter_rate <= 1.0 && oversize_rate >= 0.0 &&
        oversize_rate <= 1.0)) {
    fail("spawn rates must lie in [0, 1]");
  }
  if (clutter_max_frames < 1 || oversize_max_frames < 1) fail("clutter lifetimes must be >= 1");
}

SyntheticMission generate_mission(const SynthConfig& c) {
  c.validate();
  Rng rng(c.seed);
  const auto n_frames = static_cast<std::int64_t>(std::llround(c.duration * c.fps));
  const double dt = 1.0 / c.fps;
  const auto hold = std::max<std::int64_t>(1, std::llround(c.accel_hold * c.fps));

  // Camera motion: offset[k] maps world to image on frame k, accel[k] acts on
  // the interval (k, k+1].
  std::vector<Vec2> offset(static_cast<std::size_t>(std::max<std::int64_t>(n_frames, 1)));
  std::vector<Vec2> accel(offset.size());
  Vec2 pos{0.0, 0.0};
  Vec2 vel{-c.pan_speed, 0.0};
  Vec2 a{};
  const double hold_s = static_cast<double>(hold) * dt;
  for (std::int64_t k = 0; k < n_frames; ++k) {
    if (k % hold == 0) {
      a = {rng.uniform(-c.accel_max, c.accel_max), rng.uniform(-c.accel_max, c.accel_max)};
      // Keep the pan leftward at 0.5x..1.5x speed and the vertical drift small.
      if (vel.x + a.x * hold_s > -0.5 * c.pan_speed) a.x = -std::abs(a.x);
      if (vel.x + a.x * hold_s < -1.5 * c.pan_speed) a.x = std::abs(a.x);
      if (vel.y + a.y * hold_s > 0.25 * c.pan_speed || (pos.y > 0.1 * c.image_height && vel.y > 0)) {
        a.y = -std::abs(a.y);
      }
      if (vel.y + a.y * hold_s < -0.25 * c.pan_speed ||
          (pos.y < -0.1 * c.image_height && vel.y < 0)) {
        a.y = std::abs(a.y);
      }
    }
    offset[static_cast<std::size_t>(k)] = pos;
    accel[static_cast<std::size_t>(k)] = a;
    pos.x += vel.x * dt + 0.5 * a.x * dt * dt;
    pos.y += vel.y * dt + 0.5 * a.y * dt * dt;
    vel.x += a.x * dt;
    vel.y += a.y * dt;
  }

  // World region swept by the image.
  double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
  for (std::int64_t k = 0; k < n_frames; ++k) {
    const Vec2 o = offset[static_cast<std::size_t>(k)];
    min_x = std::min(min_x, -o.x);
    max_x = std::max(max_x, -o.x);
    min_y = std::min(min_y, -o.y);
    max_y = std::max(max_y, -o.y);
  }
  max_x += c.image_width;
  max_y += c.image_height;
  // Targets sit where the view stays, so vertical drift cannot hide them.
  const double band_lo = max_y - c.image_height;
  const double band_hi = min_y + c.image_height;

  std::vector<WorldObject> targets;
  for (int i = 0, attempts = 0; i < c.n_targets && attempts < 100000; ++attempts) {
    const auto cls = static_cast<ClassId>(rng.below(3));
    BoundingBox b = target_size(cls, rng);
    const double xlo = min_x + c.image_width * 0.5 + b.w;
    const double xhi = max_x - c.image_width * 0.5 - b.w;
    const double ylo = band_lo + b.h;
    const double yhi = band_hi - b.h;
    b.cx = rng.uniform(xlo, std::max(xlo, xhi));
    b.cy = rng.uniform(ylo, std::max(ylo, yhi));
    const bool clash = std::any_of(targets.begin(), targets.end(),
                                   [&](const WorldObject& t) { return overlaps(t.box, b, 30.0); });
    if (clash) continue;
    targets.push_back({b, cls, 0.0, 0, n_frames - 1});
    ++i;
  }

  std::vector<WorldObject> clutter;
  auto spawn = [&](std::int64_t k, double wlo, double whi, int max_frames, double score_lo) {
    const Vec2 o = offset[static_cast<std::size_t>(k)];
    for (int tries = 0; tries < 20; ++tries) {
      BoundingBox b{0, 0, rng.uniform(wlo, whi), rng.uniform(wlo, whi)};
      b.cx = rng.uniform(b.w / 2.0, c.image_width - b.w / 2.0) - o.x;
      b.cy = rng.uniform(b.h / 2.0, c.image_height - b.h / 2.0) - o.y;
      const bool clash = std::any_of(targets.begin(), targets.end(), [&](const WorldObject& t) {
        return overlaps(t.box, b, 10.0);
      });
      if (clash) continue;
      const auto life = static_cast<std::int64_t>(1 + rng.below(static_cast<std::uint64_t>(max_frames)));
      clutter.push_back({b, static_cast<ClassId>(rng.below(3)), rng.uniform(score_lo, 0.9), k,
                         k + life - 1});
      return;
    }
  };

  SyntheticMission m;
  m.frames.reserve(static_cast<std::size_t>(n_frames));
  for (std::int64_t k = 0; k < n_frames; ++k) {
    const Vec2 o = offset[static_cast<std::size_t>(k)];
    if (rng.uniform() < c.clutter_rate) spawn(k, 15.0, 100.0, c.clutter_max_frames, 0.1);
    if (rng.uniform() < c.oversize_rate) spawn(k, 130.0, 300.0, c.oversize_max_frames, 0.5);

    FrameRecord f;
    f.frame_index = k;
    f.timestamp = static_cast<double>(k) * dt;
    io::TruthFrame truth;
    truth.frame_index = k;
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const BoundingBox img = shifted(targets[i].box, o);
      if (!fully_visible(img, c)) continue;
      truth.targets.push_back({static_cast<std::int64_t>(i + 1), img, targets[i].class_id});
      if (rng.uniform() < c.miss_prob) continue;
      Detection d;
      d.bbox = {img.cx + rng.normal(0.0, c.position_noise), img.cy + rng.normal(0.0, c.position_noise),
                std::max(1.0, img.w + rng.normal(0.0, c.size_noise)),
                std::max(1.0, img.h + rng.normal(0.0, c.size_noise))};
      d.score = rng.uniform(c.score_min, c.score_max);
      d.class_id = targets[i].class_id;
      f.detections.push_back(d);
    }
    for (const auto& cl : clutter) {
      if (k < cl.first || k > cl.last) continue;
      const BoundingBox img = shifted(cl.box, o);
      if (!fully_visible(img, c)) continue;
      f.detections.push_back({img, cl.score, cl.class_id});
    }
    for (std::size_t i = f.detections.size(); i > 1; --i) {
      std::swap(f.detections[i - 1], f.detections[rng.below(i)]);
    }
    m.frames.push_back(std::move(f));
    m.truth.push_back(std::move(truth));

    ImuSample s;
    s.frame_index = k;
    if (k > 0) {
      const Vec2 prev = accel[static_cast<std::size_t>(k - 1)];
      s.ax = prev.x / c.imu_scale + (c.imu_noise > 0.0 ? rng.normal(0.0, c.imu_noise) : 0.0);
      s.ay = prev.y / c.imu_scale + (c.imu_noise > 0.0 ? rng.normal(0.0, c.imu_noise) : 0.0);
    }
    m.imu.push_back(s);
  }
  return m;
}

}  // namespace antinspect::app
