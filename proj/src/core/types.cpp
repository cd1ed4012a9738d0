#include "antinspect/core/types.hpp"

#include <algorithm>
#include <cmath>

namespace antinspect {

bool BoundingBox::valid() const {
  return std::isfinite(cx) && std::isfinite(cy) && std::isfinite(w) && std::isfinite(h) &&
         w > 0.0 && h > 0.0;
}

std::array<double, 4> BoundingBox::corners() const {
  return {cx - w / 2.0, cy - h / 2.0, cx + w / 2.0, cy + h / 2.0};
}

BoundingBox BoundingBox::from_corners(double x1, double y1, double x2, double y2) {
  return {(x1 + x2) / 2.0, (y1 + y2) / 2.0, x2 - x1, y2 - y1};
}

bool Detection::valid() const {
  return bbox.valid() && std::isfinite(score) && score >= 0.0 && score <= 1.0;
}

bool ImuSample::valid() const {
  return std::isfinite(ax) && std::isfinite(ay) && std::isfinite(az);
}

double iou(const BoundingBox& a, const BoundingBox& b) {
  const auto ca = a.corners();
  const auto cb = b.corners();
  const double iw = std::min(ca[2], cb[2]) - std::max(ca[0], cb[0]);
  const double ih = std::min(ca[3], cb[3]) - std::max(ca[1], cb[1]);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  // Clamp guards the last-ulp case where inter rounds above uni.
  return std::clamp(inter / uni, 0.0, 1.0);
}

}  // namespace antinspect
