#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace antinspect::swarmplan {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);

/// Square inspection area split into square cells.
struct AreaSpec {
  double side = 600.0;    // L, meters
  double cell = 15.0;     // grid cell side
  double radius = 15.0;   // UAV coverage radius

  void validate() const;
  [[nodiscard]] std::size_t cells_per_side() const;
  [[nodiscard]] std::size_t cell_count() const { return cells_per_side() * cells_per_side(); }
  [[nodiscard]] Point cell_center(std::size_t ix, std::size_t iy) const;
  [[nodiscard]] Point center() const { return {side / 2.0, side / 2.0}; }
};

struct BaseStation {
  Point position;
  double carrier_freq = 3.5e9;  // Hz
};

struct Waypoint {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // heading of the leg leaving this waypoint, radians

  [[nodiscard]] Point point() const { return {x, y}; }
};

struct UavPath {
  std::vector<Waypoint> waypoints;

  [[nodiscard]] double length() const;
};

/// Free-space path loss in dB: 20 log10(d) + 20 log10(f) + 20 log10(4 pi / c).
/// Throws DomainError unless d > 0 and f > 0.
double fspl(double distance_m, double freq_hz);

/// Uncovered area counting only the listed waypoints as UAV positions: a cell
/// is uncovered when every waypoint is farther than R from its midpoint.
double uncovered_area(std::span<const UavPath> paths, const AreaSpec& area);

/// Same test against every point of the flown polylines.
double uncovered_area_swept(std::span<const UavPath> paths, const AreaSpec& area);

/// Index of the closest station; ties go to the lower index.
std::size_t nearest_station(Point p, std::span<const BaseStation> stations);

/// Consecutive waypoint pairs whose nearest station differs.
int handovers(const UavPath& path, std::span<const BaseStation> stations);

/// Nearest-station index for each waypoint of the path.
std::vector<std::size_t> serving_schedule(const UavPath& path,
                                          std::span<const BaseStation> stations);

/// Flies the path at constant speed with the heading-projected step
/// x += v dt cos(theta), y += v dt sin(theta), sampling every dt seconds.
/// The last sample is the final waypoint.
std::vector<Point> fly(const UavPath& path, double speed, double dt);

/// Mission time at which the UAVs, all departing together, have covered
/// `fraction` of the grid cells. +infinity if never reached.
double time_to_coverage(std::span<const UavPath> paths, const AreaSpec& area, double speed,
                        double fraction, double dt = 1.0);

}  // namespace antinspect::swarmplan
