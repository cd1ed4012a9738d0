#include "antinspect/swarmplan/geometry.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "antinspect/core/errors.hpp"

namespace antinspect::swarmplan {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

void AreaSpec::validate() const {
  if (!(side > 0.0)) throw ConfigError("area.L: must be > 0");
  if (!(cell > 0.0 && cell <= side)) throw ConfigError("area.delta: must lie in (0, L]");
  if (!(radius > 0.0)) throw ConfigError("area.R: must be > 0");
  const double n = std::round(side / cell);
  if (std::abs(n * cell - side) > 1e-9 * side) {
    throw ConfigError(fmt::format("area: L = {} is not a multiple of delta = {}", side, cell));
  }
}

std::size_t AreaSpec::cells_per_side() const {
  return static_cast<std::size_t>(std::llround(side / cell));
}

Point AreaSpec::cell_center(std::size_t ix, std::size_t iy) const {
  return {(static_cast<double>(ix) + 0.5) * cell, (static_cast<double>(iy) + 0.5) * cell};
}

double UavPath::length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    total += distance(waypoints[i - 1].point(), waypoints[i].point());
  }
  return total;
}

double fspl(double distance_m, double freq_hz) {
  if (!(distance_m > 0.0) || !(freq_hz > 0.0)) {
    throw DomainError(fmt::format("fspl: need d > 0 and f > 0 (d = {}, f = {})", distance_m, freq_hz));
  }
  return 20.0 * std::log10(distance_m) + 20.0 * std::log10(freq_hz) +
         20.0 * std::log10(4.0 * std::numbers::pi / kSpeedOfLight);
}

namespace {

double segment_distance_sq(Point p, Point a, Point b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len_sq = dx * dx + dy * dy;
  double t = 0.0;
  if (len_sq > 0.0) t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len_sq, 0.0, 1.0);
  const double ex = a.x + t * dx - p.x;
  const double ey = a.y + t * dy - p.y;
  return ex * ex + ey * ey;
}

// Visits the cells whose midpoint lies within R of the segment a-b.
template <typename Fn>
void for_cells_near(const AreaSpec& area, Point a, Point b, Fn&& fn) {
  const std::size_t n = area.cells_per_side();
  const double r = area.radius;
  auto index_range = [&](double lo, double hi) {
    const double first = std::ceil((lo - r) / area.cell - 0.5);
    const double last = std::floor((hi + r) / area.cell - 0.5);
    const auto clamp_idx = [&](double v) {
      return static_cast<std::ptrdiff_t>(std::clamp(v, -1.0, static_cast<double>(n)));
    };
    return std::pair{std::max<std::ptrdiff_t>(clamp_idx(first), 0),
                     std::min<std::ptrdiff_t>(clamp_idx(last), static_cast<std::ptrdiff_t>(n) - 1)};
  };
  const auto [x0, x1] = index_range(std::min(a.x, b.x), std::max(a.x, b.x));
  const auto [y0, y1] = index_range(std::min(a.y, b.y), std::max(a.y, b.y));
  const double r_sq = r * r;
  for (std::ptrdiff_t iy = y0; iy <= y1; ++iy) {
    for (std::ptrdiff_t ix = x0; ix <= x1; ++ix) {
      const Point c = area.cell_center(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy));
      if (segment_distance_sq(c, a, b) <= r_sq) fn(static_cast<std::size_t>(iy) * n + static_cast<std::size_t>(ix));
    }
  }
}

double uncovered_from_mask(const std::vector<char>& covered, const AreaSpec& area) {
  const auto hits = static_cast<double>(std::count(covered.begin(), covered.end(), 1));
  return (static_cast<double>(covered.size()) - hits) * area.cell * area.cell;
}

}  // namespace

double uncovered_area(std::span<const UavPath> paths, const AreaSpec& area) {
  std::vector<char> covered(area.cell_count(), 0);
  for (const auto& path : paths) {
    for (const auto& w : path.waypoints) {
      for_cells_near(area, w.point(), w.point(), [&](std::size_t i) { covered[i] = 1; });
    }
  }
  return uncovered_from_mask(covered, area);
}

double uncovered_area_swept(std::span<const UavPath> paths, const AreaSpec& area) {
  std::vector<char> covered(area.cell_count(), 0);
  for (const auto& path : paths) {
    const auto& w = path.waypoints;
    if (w.size() == 1) {
      for_cells_near(area, w[0].point(), w[0].point(), [&](std::size_t i) { covered[i] = 1; });
    }
    for (std::size_t k = 1; k < w.size(); ++k) {
      for_cells_near(area, w[k - 1].point(), w[k].point(), [&](std::size_t i) { covered[i] = 1; });
    }
  }
  return uncovered_from_mask(covered, area);
}

std::size_t nearest_station(Point p, std::span<const BaseStation> stations) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < stations.size(); ++k) {
    const double d = distance(p, stations[k].position);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

std::vector<std::size_t> serving_schedule(const UavPath& path,
                                          std::span<const BaseStation> stations) {
  std::vector<std::size_t> out;
  out.reserve(path.waypoints.size());
  for (const auto& w : path.waypoints) out.push_back(nearest_station(w.point(), stations));
  return out;
}

int handovers(const UavPath& path, std::span<const BaseStation> stations) {
  if (stations.size() <= 1) return 0;
  const auto schedule = serving_schedule(path, stations);
  int count = 0;
  for (std::size_t i = 1; i < schedule.size(); ++i) count += schedule[i] != schedule[i - 1];
  return count;
}

std::vector<Point> fly(const UavPath& path, double speed, double dt) {
  std::vector<Point> samples;
  const auto& w = path.waypoints;
  if (w.empty()) return samples;
  const double step = speed * dt;
  Point p = w[0].point();
  samples.push_back(p);
  std::size_t next = 1;
  double budget = step;  // distance still to fly before the next sample
  while (next < w.size()) {
    const Point target = w[next].point();
    const double remaining = distance(p, target);
    if (remaining <= budget) {
      budget -= remaining;
      p = target;
      ++next;
      continue;
    }
    const double theta = std::atan2(target.y - p.y, target.x - p.x);
    p.x += budget * std::cos(theta);
    p.y += budget * std::sin(theta);
    samples.push_back(p);
    budget = step;
  }
  if (budget < step) samples.push_back(p);
  return samples;
}

double time_to_coverage(std::span<const UavPath> paths, const AreaSpec& area, double speed,
                        double fraction, double dt) {
  const std::size_t total = area.cell_count();
  const auto needed = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(total) - 1e-9));
  const double step = speed * dt;
  std::vector<char> covered(total, 0);
  std::size_t count = 0;
  auto sweep = [&](Point a, Point b) {
    for_cells_near(area, a, b, [&](std::size_t i) {
      if (!covered[i]) {
        covered[i] = 1;
        ++count;
      }
    });
  };

  // Per UAV: the next vertex to reach and the position at the last sample.
  struct Cursor {
    const std::vector<Waypoint>* w;
    std::size_t next;
    Point at;
  };
  std::vector<Cursor> cursors;
  std::size_t horizon = 0;
  for (const auto& p : paths) {
    if (p.waypoints.empty()) continue;
    cursors.push_back({&p.waypoints, 1, p.waypoints[0].point()});
    horizon = std::max(horizon, static_cast<std::size_t>(std::ceil(p.length() / step - 1e-12)));
  }
  for (std::size_t k = 0; k <= horizon; ++k) {
    for (auto& c : cursors) {
      if (k == 0) {
        sweep(c.at, c.at);
        continue;
      }
      // Sweep the exact polyline flown during this step, corners included.
      double budget = step;
      while (c.next < c.w->size()) {
        const Point target = (*c.w)[c.next].point();
        const double remaining = distance(c.at, target);
        if (remaining <= budget) {
          sweep(c.at, target);
          budget -= remaining;
          c.at = target;
          ++c.next;
          continue;
        }
        const double f = budget / remaining;
        const Point end{c.at.x + f * (target.x - c.at.x), c.at.y + f * (target.y - c.at.y)};
        sweep(c.at, end);
        c.at = end;
        break;
      }
    }
    if (count >= needed) return static_cast<double>(k) * dt;
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace antinspect::swarmplan
