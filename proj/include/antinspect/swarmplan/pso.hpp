#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "antinspect/swarmplan/objective.hpp"

namespace antinspect::swarmplan {

/// One candidate plan: the free waypoints of every UAV plus their velocities.
struct Particle {
  std::vector<UavPath> paths;     // launch/return point included at both ends
  std::vector<double> velocity;   // (vx, vy) per free waypoint, UAV-major
  std::vector<UavPath> best_paths;
  double best_score = 0.0;
  double score = 0.0;
};

struct PlanResult {
  std::vector<UavPath> paths;
  ObjectiveParts parts;
  std::vector<double> trace;  // global best after each evaluation round
  std::vector<std::vector<std::size_t>> serving;  // nearest station per waypoint, per UAV
  std::vector<int> handovers;
  double coverage_fraction = 0.0;  // swept coverage of the final plan
  std::size_t evaluations = 0;
};

/// Particle swarm search over the free waypoints. Round 0 evaluates the
/// initial swarm; every later round applies
///   v <- omega v + c1 r1 (pbest - x) + c2 r2 (gbest - x),  x <- x + v
/// per coordinate with fresh uniform r1, r2, clamps to the area (zeroing the
/// velocity component at a wall) and re-derives each leg heading from the new
/// geometry. The global best only ever improves.
PlanResult pso_optimize(const PlannerConfig& config, const AreaSpec& area,
                        std::span<const BaseStation> stations);

}  // namespace antinspect::swarmplan
