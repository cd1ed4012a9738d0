#include "antinspect/swarmplan/pso.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "antinspect/core/errors.hpp"
#include "antinspect/core/rng.hpp"

namespace antinspect::swarmplan {
namespace {

constexpr double kPi = std::numbers::pi;

// Heading of each leg, read off the geometry so that flying the headings at
// constant speed reproduces the polyline.
void refresh_headings(UavPath& path) {
  auto& w = path.waypoints;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    w[i].theta = std::atan2(w[i + 1].y - w[i].y, w[i + 1].x - w[i].x);
  }
  if (w.size() >= 2) w.back().theta = w[w.size() - 2].theta;
}

// Random walk from the launch point: UAV j leaves along 2 pi (j + u) / n, so
// the departure directions are spread evenly around the circle.
UavPath initial_path(std::size_t uav, std::size_t n_uavs, double phase, const PlannerConfig& cfg,
                     const AreaSpec& area, Rng& rng) {
  const Point c = area.center();
  UavPath path;
  path.waypoints.push_back({c.x, c.y, 0.0});
  double heading = 2.0 * kPi * (static_cast<double>(uav) + phase) / static_cast<double>(n_uavs);
  const double leg = area.side / 5.0;
  Point p = c;
  for (int i = 0; i < cfg.n_waypoints; ++i) {
    const double step = leg * rng.uniform(0.5, 1.5);
    Point q{p.x + step * std::cos(heading), p.y + step * std::sin(heading)};
    if (q.x < 0.0 || q.x > area.side || q.y < 0.0 || q.y > area.side) {
      heading += kPi;  // bounce back into the area
      q = {std::clamp(q.x, 0.0, area.side), std::clamp(q.y, 0.0, area.side)};
    }
    path.waypoints.push_back({q.x, q.y, 0.0});
    p = q;
    heading += rng.uniform(-kPi / 3.0, kPi / 3.0);
  }
  path.waypoints.push_back({c.x, c.y, 0.0});
  refresh_headings(path);
  return path;
}

double evaluate(const std::vector<UavPath>& paths, const AreaSpec& area,
                std::span<const BaseStation> stations, const PlannerConfig& cfg) {
  return objective_full(paths, area, stations, cfg).total;
}

}  // namespace

PlanResult pso_optimize(const PlannerConfig& config, const AreaSpec& area,
                        std::span<const BaseStation> stations) {
  config.validate();
  area.validate();
  if (stations.empty()) throw ConfigError("scenario: at least one base station is required");

  Rng rng(config.rng_seed);
  const auto n_uavs = static_cast<std::size_t>(config.n_uavs);
  const auto n_free = static_cast<std::size_t>(config.n_waypoints);
  const double vmax = config.velocity_limit * area.side;

  PlanResult result;
  std::vector<Particle> swarm(static_cast<std::size_t>(config.swarm_size));
  for (auto& p : swarm) {
    const double phase = rng.uniform();
    for (std::size_t j = 0; j < n_uavs; ++j) {
      p.paths.push_back(initial_path(j, n_uavs, phase, config, area, rng));
    }
    p.velocity.resize(n_uavs * n_free * 2);
    for (auto& v : p.velocity) v = rng.uniform(-0.1, 0.1) * vmax;
    p.score = evaluate(p.paths, area, stations, config);
    ++result.evaluations;
    p.best_paths = p.paths;
    p.best_score = p.score;
  }

  auto best_of_swarm = [&]() {
    std::size_t best = 0;
    for (std::size_t i = 1; i < swarm.size(); ++i) {
      if (swarm[i].best_score < swarm[best].best_score) best = i;
    }
    return best;
  };
  std::size_t g = best_of_swarm();
  std::vector<UavPath> gbest_paths = swarm[g].best_paths;
  double gbest = swarm[g].best_score;
  result.trace.push_back(gbest);

  for (int round = 1; round < config.iterations; ++round) {
    for (auto& p : swarm) {
      for (std::size_t j = 0; j < n_uavs; ++j) {
        auto& w = p.paths[j].waypoints;
        const auto& pb = p.best_paths[j].waypoints;
        const auto& gb = gbest_paths[j].waypoints;
        for (std::size_t i = 0; i < n_free; ++i) {
          auto& cur = w[i + 1];
          const std::size_t base = (j * n_free + i) * 2;
          double coords[2] = {cur.x, cur.y};
          const double pbest[2] = {pb[i + 1].x, pb[i + 1].y};
          const double gbst[2] = {gb[i + 1].x, gb[i + 1].y};
          for (std::size_t d = 0; d < 2; ++d) {
            double& v = p.velocity[base + d];
            const double r1 = rng.uniform();
            const double r2 = rng.uniform();
            v = config.omega * v + config.c1 * r1 * (pbest[d] - coords[d]) +
                config.c2 * r2 * (gbst[d] - coords[d]);
            v = std::clamp(v, -vmax, vmax);
            coords[d] += v;
            if (coords[d] < 0.0 || coords[d] > area.side) {
              coords[d] = std::clamp(coords[d], 0.0, area.side);
              v = 0.0;
            }
          }
          cur.x = coords[0];
          cur.y = coords[1];
        }
        refresh_headings(p.paths[j]);
      }
      p.score = evaluate(p.paths, area, stations, config);
      ++result.evaluations;
      if (p.score < p.best_score) {
        p.best_score = p.score;
        p.best_paths = p.paths;
      }
    }
    g = best_of_swarm();
    if (swarm[g].best_score < gbest) {
      gbest = swarm[g].best_score;
      gbest_paths = swarm[g].best_paths;
    }
    result.trace.push_back(gbest);
  }

  result.paths = gbest_paths;
  result.parts = objective_full(result.paths, area, stations, config);
  for (const auto& path : result.paths) {
    result.serving.push_back(serving_schedule(path, stations));
    result.handovers.push_back(handovers(path, stations));
  }
  const double total_area = area.side * area.side;
  result.coverage_fraction = 1.0 - uncovered_area_swept(result.paths, area) / total_area;
  return result;
}

}  // namespace antinspect::swarmplan
