#include "antinspect/swarmplan/objective.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "antinspect/core/errors.hpp"

namespace antinspect::swarmplan {

void PlannerConfig::validate() const {
  auto fail = [](std::string_view field, std::string_view rule) {
    throw ConfigError(fmt::format("planner.{}: {}", field, rule));
  };
  if (n_uavs < 1) fail("n_uavs", "must be >= 1");
  if (n_waypoints < 1) fail("n_waypoints", "must be >= 1");
  if (swarm_size < 1) fail("swarm_size", "must be >= 1");
  if (iterations < 1) fail("iterations", "must be >= 1");
  if (!(omega >= 0.0 && omega <= 1.0)) fail("omega", "must lie in [0, 1]");
  if (!(c1 >= 0.0)) fail("c1", "must be >= 0");
  if (!(c2 >= 0.0)) fail("c2", "must be >= 0");
  if (!(velocity_limit > 0.0)) fail("velocity_limit", "must be > 0");
  const std::pair<const char*, double> weights[] = {
      {"alpha1", alpha1}, {"alpha2", alpha2}, {"alpha3", alpha3}, {"alpha4", alpha4}, {"alpha5", alpha5}};
  for (const auto& [name, w] : weights) {
    if (!(w >= 0.0)) fail(name, "must be >= 0");
  }
  if (fspl_sign != 1.0 && fspl_sign != -1.0) fail("fspl_sign", "must be +1 or -1");
  if (!(collision_c >= 0.0)) fail("collision_c", "must be >= 0");
  if (!(collision_q > 0.0)) fail("collision_q", "must be > 0");
  if (!(min_separation > 0.0)) fail("min_separation", "must be > 0");
  if (!(uav_speed > 0.0)) fail("uav_speed", "must be > 0");
  if (!(battery_wh > 0.0)) fail("battery_wh", "must be > 0");
  if (!(flight_power_w > 0.0)) fail("flight_power_w", "must be > 0");
  if (!(endurance_penalty >= 0.0)) fail("endurance_penalty", "must be >= 0");
  if (!(tx_power_w > 0.0)) fail("tx_power_w", "must be > 0");
  if (!(antenna_gain > 0.0)) fail("antenna_gain", "must be > 0");
  if (!(noise_power_w >= 0.0)) fail("noise_power_w", "must be >= 0");
  if (!(carrier_freq > 0.0)) fail("carrier_freq", "must be > 0");
}

double PlannerConfig::endurance_m() const {
  return uav_speed * battery_wh * 3600.0 / flight_power_w;
}

namespace {

// Received power over a free-space link of length d.
double link_power(double d, const RadioParams& radio) {
  const double lambda = kSpeedOfLight / radio.carrier_freq;
  const double ratio = lambda / (4.0 * std::numbers::pi * d);
  return radio.tx_power_w * radio.antenna_gain * ratio * ratio;
}

RadioParams radio_of(const PlannerConfig& c) {
  return {c.tx_power_w, c.antenna_gain, c.noise_power_w, c.carrier_freq};
}

}  // namespace

double sinr(std::size_t uav, std::span<const Point> positions,
            std::span<const BaseStation> stations, const RadioParams& radio) {
  if (stations.empty()) throw DomainError("sinr: no base stations");
  const Point self = positions[uav];
  const auto serving = nearest_station(self, stations);
  const double d_s = std::max(distance(self, stations[serving].position), 1.0);
  double interference = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i == uav) continue;
    const double d = distance(self, positions[i]);
    if (d <= 0.0) throw DegenerateGeometry(fmt::format("sinr: UAVs {} and {} coincide", uav, i));
    interference += link_power(d, radio);
  }
  return link_power(d_s, radio) / (interference + radio.noise_power_w);
}

double collision_potential(std::span<const Point> positions, double c, double q) {
  double v = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      const double d = distance(positions[i], positions[j]);
      if (d <= 0.0) {
        throw DegenerateGeometry(fmt::format("collision potential: UAVs {} and {} coincide", i, j));
      }
      v += c / std::pow(d, q);
    }
  }
  return v;
}

ObjectiveParts objective(std::span<const UavPath> paths, const AreaSpec& area,
                         std::span<const BaseStation> stations, const PlannerConfig& config) {
  ObjectiveParts parts;
  const double uncovered = config.coverage == CoverageModel::Swept
                               ? uncovered_area_swept(paths, area)
                               : uncovered_area(paths, area);
  for (const auto& path : paths) {
    parts.path_len += path.length();
    if (!path.waypoints.empty() && !stations.empty()) {
      double loss_sum = 0.0;
      for (const auto& w : path.waypoints) {
        for (const auto& s : stations) {
          // 1 m floor keeps the term finite when a waypoint sits on a station.
          loss_sum += 1.0 / fspl(std::max(distance(w.point(), s.position), 1.0), s.carrier_freq);
        }
      }
      parts.fspl_term += loss_sum / static_cast<double>(path.waypoints.size());
    }
    parts.handover_term += handovers(path, stations);
    parts.coverage_term += uncovered;
  }
  parts.j = parts.path_len + config.fspl_sign * config.alpha1 * parts.fspl_term +
            config.alpha2 * parts.handover_term + config.alpha3 * parts.coverage_term;
  parts.j_prime = parts.j;
  parts.j_full = parts.j;
  parts.total = parts.j;
  return parts;
}

ObjectiveParts objective_full(std::span<const UavPath> paths, const AreaSpec& area,
                              std::span<const BaseStation> stations, const PlannerConfig& config) {
  ObjectiveParts parts = objective(paths, area, stations, config);
  const RadioParams radio = radio_of(config);

  // Free waypoints sit at indices 1..size-2; the shared launch point is skipped.
  std::size_t slots = 0;
  for (const auto& p : paths) slots = std::max(slots, p.waypoints.size());
  const std::size_t first = slots > 2 ? 1 : 0;
  const std::size_t last = slots > 2 ? slots - 1 : slots;

  std::vector<Point> positions(paths.size());
  double sinr_sum = 0.0;
  double collision_sum = 0.0;
  std::size_t samples = 0;
  for (std::size_t i = first; i < last; ++i) {
    for (std::size_t j = 0; j < paths.size(); ++j) {
      const auto& w = paths[j].waypoints;
      positions[j] = w.empty() ? area.center() : w[std::min(i, w.size() - 1)].point();
    }
    // Separation floor: nudge coincident positions apart deterministically.
    for (std::size_t a = 0; a < positions.size(); ++a) {
      for (std::size_t b = a + 1; b < positions.size(); ++b) {
        const double d = distance(positions[a], positions[b]);
        if (d < config.min_separation) {
          const double angle = d > 0.0 ? std::atan2(positions[b].y - positions[a].y,
                                                    positions[b].x - positions[a].x)
                                       : 2.0 * std::numbers::pi * static_cast<double>(b) /
                                             static_cast<double>(positions.size());
          positions[b] = {positions[a].x + config.min_separation * std::cos(angle),
                          positions[a].y + config.min_separation * std::sin(angle)};
        }
      }
    }
    if (!stations.empty()) {
      for (std::size_t j = 0; j < positions.size(); ++j) {
        sinr_sum += 1.0 / sinr(j, positions, stations, radio);
      }
    }
    collision_sum += collision_potential(positions, config.collision_c, config.collision_q);
    ++samples;
  }
  if (samples > 0) {
    parts.sinr_term = sinr_sum / static_cast<double>(samples);
    parts.collision_term = collision_sum / static_cast<double>(samples);
  }

  const double endurance = config.endurance_m();
  for (const auto& p : paths) parts.endurance_excess += std::max(0.0, p.length() - endurance);

  parts.j_prime = parts.j + config.alpha4 * parts.sinr_term;
  parts.j_full = parts.j_prime + config.alpha5 * parts.collision_term;
  parts.total = parts.j_full + config.endurance_penalty * parts.endurance_excess;
  return parts;
}

}  // namespace antinspect::swarmplan
