#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace antinspect {

/// Axis-aligned box in pixel coordinates, stored center-based.
struct BoundingBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 1.0;
  double h = 1.0;

  [[nodiscard]] bool valid() const;
  [[nodiscard]] double area() const { return w * h; }

  /// Corner form (x1, y1, x2, y2), the layout most detector outputs use.
  [[nodiscard]] std::array<double, 4> corners() const;
  static BoundingBox from_corners(double x1, double y1, double x2, double y2);

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

// Open enumeration: the three named antenna classes plus any other integer a
// detector may emit. Unknown values pass through untouched.
using ClassId = std::int32_t;
namespace antenna_class {
inline constexpr ClassId kYagi = 0;
inline constexpr ClassId kPlateLog = 1;
inline constexpr ClassId kPatch = 2;
}  // namespace antenna_class

struct Detection {
  BoundingBox bbox;
  double score = 0.0;
  ClassId class_id = antenna_class::kYagi;

  [[nodiscard]] bool valid() const;
  friend bool operator==(const Detection&, const Detection&) = default;
};

struct FrameRecord {
  std::int64_t frame_index = 0;
  double timestamp = 0.0;
  std::vector<Detection> detections;
};

/// Linear acceleration (m/s^2) reported by the airframe IMU for one frame
/// interval.
struct ImuSample {
  std::int64_t frame_index = 0;
  double ax = 0.0;
  double ay = 0.0;
  double az = 0.0;

  [[nodiscard]] bool valid() const;
  [[nodiscard]] bool is_zero() const { return ax == 0.0 && ay == 0.0 && az == 0.0; }
};

/// Intersection over union; 0 for disjoint boxes.
double iou(const BoundingBox& a, const BoundingBox& b);

}  // namespace antinspect
