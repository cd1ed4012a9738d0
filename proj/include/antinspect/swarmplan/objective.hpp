#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "antinspect/swarmplan/geometry.hpp"

namespace antinspect::swarmplan {

enum class CoverageModel {
  Waypoints,  // only the waypoints count as positions
  Swept,      // every point of the flown polyline counts
};

struct PlannerConfig {
  int n_uavs = 4;
  int n_waypoints = 20;  // free waypoints per UAV, launch/return point excluded
  int swarm_size = 30;
  int iterations = 300;  // evaluation rounds, the initial one included
  double omega = 0.5;
  double c1 = 1.5;
  double c2 = 1.5;
  double velocity_limit = 0.2;  // max per-iteration move, fraction of L

  double alpha1 = 100.0;  // station path-loss term
  double alpha2 = 5.0;    // handovers
  double alpha3 = 0.05;   // uncovered area
  double alpha4 = 100.0;  // 1 / SINR
  double alpha5 = 100.0;  // collision potential
  // +1 evaluates the path-loss term as written (sum of 1/FSPL); -1 flips it so
  // that minimising rewards staying close to the stations.
  double fspl_sign = 1.0;
  double collision_c = 1.0;
  double collision_q = 2.0;
  double min_separation = 1.0;  // distance floor inside the planner objective, m
  CoverageModel coverage = CoverageModel::Swept;

  double uav_speed = 2.0;         // m/s
  double battery_wh = 100.0;
  double flight_power_w = 180.0;
  double endurance_penalty = 1000.0;  // added per meter beyond endurance

  double tx_power_w = 0.1;
  double antenna_gain = 1.0;
  double noise_power_w = 1e-13;
  double carrier_freq = 3.5e9;

  std::uint64_t rng_seed = 1;

  void validate() const;
  /// Flight range on one battery: speed * battery_wh * 3600 / flight_power_w.
  [[nodiscard]] double endurance_m() const;
};

struct ObjectiveParts {
  double path_len = 0.0;       // sum of L_j
  double fspl_term = 0.0;      // sum over UAVs of the per-waypoint mean of sum_k 1/FSPL
  double handover_term = 0.0;  // sum of S_j
  double coverage_term = 0.0;  // n * uncovered area (the area sits inside the per-UAV sum)
  double sinr_term = 0.0;      // sum over UAVs of the mean 1/SINR
  double collision_term = 0.0; // mean collision potential over waypoint indices
  double endurance_excess = 0.0;  // meters beyond endurance, summed over UAVs

  double j = 0.0;        // base objective
  double j_prime = 0.0;  // + interference
  double j_full = 0.0;   // + collision avoidance
  double total = 0.0;    // j_full + endurance penalty; what the planner minimises
};

/// Base objective: sum_j (L_j + a1 * FSPL term + a2 * S_j + a3 * uncovered).
ObjectiveParts objective(std::span<const UavPath> paths, const AreaSpec& area,
                         std::span<const BaseStation> stations, const PlannerConfig& config);

/// Base objective plus the interference and collision terms, evaluated on the
/// UAV positions at each free-waypoint index, plus the endurance penalty.
ObjectiveParts objective_full(std::span<const UavPath> paths, const AreaSpec& area,
                              std::span<const BaseStation> stations, const PlannerConfig& config);

struct RadioParams {
  double tx_power_w = 0.1;
  double antenna_gain = 1.0;
  double noise_power_w = 1e-13;
  double carrier_freq = 3.5e9;
};

/// SINR of one UAV: its link to the nearest station over co-channel power from
/// every other UAV plus noise. Throws DegenerateGeometry if another UAV shares
/// its position.
double sinr(std::size_t uav, std::span<const Point> positions,
            std::span<const BaseStation> stations, const RadioParams& radio);

/// Pairwise repulsion sum_{i<j} C / |p_i - p_j|^q. Throws DegenerateGeometry
/// for coincident UAVs.
double collision_potential(std::span<const Point> positions, double c, double q);

}  // namespace antinspect::swarmplan
