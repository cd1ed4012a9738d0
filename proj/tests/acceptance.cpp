// One PASS/FAIL line per acceptance criterion. Exit status is non-zero when
// any criterion fails.

#include <fmt/core.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "antinspect/antsort/assignment.hpp"
#include "antinspect/antsort/tracker.hpp"
#include "antinspect/app/commands.hpp"
#include "antinspect/app/config.hpp"
#include "antinspect/app/output.hpp"
#include "antinspect/app/pipeline.hpp"
#include "antinspect/app/synth.hpp"
#include "antinspect/commsim/presets.hpp"
#include "antinspect/core/io.hpp"
#include "antinspect/core/rng.hpp"
#include "antinspect/netcost/netcost.hpp"
#include "antinspect/swarmplan/pso.hpp"

using namespace antinspect;
namespace fs = std::filesystem;

namespace {

const fs::path kData = ANTINSPECT_DATA_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "antinspect");
  std::ostringstream out, err;
  const int rc = app::run_cli(args, out, err);
  if (rc != 0) fmt::print(stderr, "command failed ({}): {}", rc, err.str());
  return rc;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("antinspect_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

// Synthetic missions shared by the KSA and mode-ordering criteria.
constexpr int kMissions = 100;

app::SyntheticMission mission(int i) {
  app::SynthConfig c;
  c.seed = 1000 + static_cast<std::uint64_t>(i);
  return app::generate_mission(c);
}

app::MissionData as_data(app::SyntheticMission m) {
  return {std::move(m.frames), std::move(m.imu), std::move(m.truth)};
}

// ---------------------------------------------------------------------------

Outcome e2el_reduction() {
  const fs::path out = scratch("c1");
  const auto t0 = std::chrono::steady_clock::now();
  if (cli({"compare", "-c", (kData / "mission" / "mission.json").string(), "-o", out.string()}) != 0) {
    return {false, "compare failed"};
  }
  const double elapsed = seconds_since(t0);
  std::istringstream in(io::read_file(out / "compare.csv"));
  std::string line;
  std::getline(in, line);
  const auto header = split_csv_line(line);
  const auto col = std::find(header.begin(), header.end(), "e2el_reduction") - header.begin();
  std::optional<double> reduction;
  while (std::getline(in, line)) {
    const auto f = split_csv_line(line);
    if (f[0] == "ECCPlus") reduction = std::stod(f[static_cast<std::size_t>(col)]);
  }
  if (!reduction) return {false, "no ECCPlus row"};
  const double target = 1.0 - 113.3 / 1026.1;
  const bool ok = std::abs(*reduction - target) <= 0.001 && elapsed < 1.0;
  return {ok, fmt::format("reduction {:.3f}% (target {:.3f}% +/- 0.1%), runtime {:.3f} s",
                          *reduction * 100.0, target * 100.0, elapsed)};
}

Outcome ksa_exactness() {
  const ksa::KsaConfig ksa_cfg;
  const antsort::TrackerConfig tracker_cfg;
  int violations_a = 0, violations_b = 0, violations_c = 0, eligible_total = 0;
  for (int i = 0; i < kMissions; ++i) {
    const app::MissionData data = as_data(mission(i));
    const app::EdgeRun run =
        app::run_edge(data, tracker_cfg, ksa_cfg, true, app::MissingImuPolicy::Error);

    // Longest run of consecutive frames on which each target is visible and
    // has a detection that survives the pixel filter.
    std::map<std::int64_t, int> longest, current;
    for (std::size_t k = 0; k < data.frames.size(); ++k) {
      std::set<std::int64_t> seen;
      for (const auto& t : data.truth[k].targets) {
        for (const auto& d : data.frames[k].detections) {
          if (d.bbox.w <= ksa_cfg.tau && d.bbox.h <= ksa_cfg.tau && iou(d.bbox, t.bbox) >= 0.5) {
            seen.insert(t.target_id);
            break;
          }
        }
      }
      for (auto& [id, c] : current) {
        if (!seen.contains(id)) c = 0;
      }
      for (auto id : seen) longest[id] = std::max(longest[id], ++current[id]);
    }

    std::map<std::int64_t, int> uploads_per_target;
    std::map<std::int64_t, int> uploads_per_track;
    for (const auto& k : run.keyframes) {
      ++uploads_per_track[k.track_id];
      if (auto t = app::match_target(k.bbox, k.frame_index, data.truth, 0.5)) ++uploads_per_target[*t];
      // (b) sightings of this track up to and including the upload frame.
      std::set<std::int64_t> frames;
      for (const auto& s : run.sightings) {
        if (s.track_id == k.track_id && s.frame_index <= k.frame_index) frames.insert(s.frame_index);
      }
      if (static_cast<int>(frames.size()) < ksa_cfg.mu) ++violations_b;
    }
    for (const auto& [id, n] : uploads_per_track) violations_c += n > 1 ? 1 : 0;
    for (const auto& [id, run_len] : longest) {
      if (run_len < ksa_cfg.mu) continue;
      ++eligible_total;
      const auto it = uploads_per_target.find(id);
      if (it == uploads_per_target.end() || it->second != 1) ++violations_a;
    }
  }
  const bool ok = violations_a == 0 && violations_b == 0 && violations_c == 0;
  return {ok, fmt::format("{} missions, {} eligible targets; violations a={} b={} c={}", kMissions,
                          eligible_total, violations_a, violations_b, violations_c)};
}

Outcome kalman_correctness() {
  using namespace antsort;
  // (a) zero IMU vs the plain constant-velocity tracker.
  bool identical = true;
  {
    Rng rng(31);
    TrackerConfig plain;
    plain.imu_compensation = false;
    Tracker a{TrackerConfig{}}, b{plain};
    for (int k = 0; k < 1000 && identical; ++k) {
      FrameRecord f{k, k / 30.0, {}};
      const auto n = rng.below(6);
      for (std::uint64_t i = 0; i < n; ++i) {
        f.detections.push_back({{rng.uniform(0, 1000), rng.uniform(0, 1000), rng.uniform(10, 80),
                                 rng.uniform(10, 80)},
                                rng.uniform(),
                                0});
      }
      const ImuSample zero{k, 0.0, 0.0, 0.0};
      const auto ra = a.step(f, zero);
      const auto rb = b.step(f, zero);
      identical = ra.active_tracks.size() == rb.active_tracks.size();
      for (std::size_t i = 0; identical && i < ra.active_tracks.size(); ++i) {
        identical = ra.active_tracks[i].id == rb.active_tracks[i].id &&
                    ra.active_tracks[i].state.mean == rb.active_tracks[i].state.mean &&
                    ra.active_tracks[i].state.covariance == rb.active_tracks[i].state.covariance;
      }
    }
  }
  // (b) constant acceleration vs closed form.
  double max_err = 0.0;
  {
    const double dt = 1.0 / 30.0, s = 50.0, ax = 1.8, ay = -0.7;
    const KalmanBoxFilter f(dt, NoiseModel{}, s, false);
    TrackState st = f.initiate({100, 200, 40, 40});
    for (int n = 1; n <= 100; ++n) {
      f.predict(st, ImuSample{n, ax, ay, 0.0});
      const double t = n * dt;
      max_err = std::max({max_err, std::abs(st.mean(0) - (100 + 0.5 * s * ax * t * t)),
                          std::abs(st.mean(1) - (200 + 0.5 * s * ay * t * t)),
                          std::abs(st.mean(4) - s * ax * t), std::abs(st.mean(5) - s * ay * t)});
    }
  }
  // (c) symmetry and PSD through random cycles.
  double min_eig = std::numeric_limits<double>::infinity();
  double max_asym = 0.0;
  {
    Rng rng(41);
    const KalmanBoxFilter f(1.0 / 30.0, NoiseModel{}, 50.0, true);
    TrackState st = f.initiate({500, 400, 80, 50});
    for (int i = 0; i < 1000; ++i) {
      f.predict(st, ImuSample{i, rng.normal(0, 2), rng.normal(0, 2), rng.normal(0, 0.5)});
      if (rng.uniform() < 0.7) {
        f.update(st, {st.mean(0) + rng.normal(0, 5), st.mean(1) + rng.normal(0, 5),
                      std::max(5.0, st.mean(2) + rng.normal(0, 2)),
                      std::max(5.0, st.mean(3) + rng.normal(0, 2))});
      }
      max_asym = std::max(max_asym, (st.covariance - st.covariance.transpose()).cwiseAbs().maxCoeff());
      Eigen::SelfAdjointEigenSolver<StateMatrix> es(st.covariance);
      min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
  }
  const bool ok = identical && max_err <= 1e-9 && max_asym == 0.0 && min_eig >= -1e-9;
  return {ok, fmt::format("zero-IMU identical={}, kinematics max err {:.2e}, max asymmetry {:.1e}, "
                          "min eigenvalue {:.3e}",
                          identical, max_err, max_asym, min_eig)};
}

Outcome association_optimality() {
  using antsort::CostMatrix;
  constexpr double kOpen = 1.0;
  auto sorted_sum = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return std::accumulate(v.begin(), v.end(), 0.0);
  };
  auto cost_of = [&](const CostMatrix& m, const std::vector<std::optional<std::size_t>>& rows) {
    std::vector<double> terms;
    std::vector<bool> used(m.cols, false);
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (rows[r] && m.feasible[r * m.cols + *rows[r]]) {
        terms.push_back(m.at(r, *rows[r]));
        used[*rows[r]] = true;
      } else {
        terms.push_back(kOpen);
      }
    }
    for (bool u : used) {
      if (!u) terms.push_back(kOpen);
    }
    return sorted_sum(terms);
  };
  Rng rng(500);
  int mismatches = 0;
  for (int i = 0; i < 500; ++i) {
    CostMatrix m(rng.below(6), rng.below(6));
    for (std::size_t k = 0; k < m.cost.size(); ++k) {
      const double overlap = rng.uniform();
      m.cost[k] = 1.0 - overlap;
      m.feasible[k] = overlap >= 0.3;
    }
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::optional<std::size_t>> rows(m.rows);
    std::vector<bool> used(m.cols, false);
    std::function<void(std::size_t)> rec = [&](std::size_t r) {
      if (r == m.rows) {
        best = std::min(best, cost_of(m, rows));
        return;
      }
      rows[r].reset();
      rec(r + 1);
      for (std::size_t c = 0; c < m.cols; ++c) {
        if (used[c] || !m.feasible[r * m.cols + c]) continue;
        used[c] = true;
        rows[r] = c;
        rec(r + 1);
        used[c] = false;
        rows[r].reset();
      }
    };
    rec(0);
    if (cost_of(m, antsort::solve_assignment(m, kOpen)) != best) ++mismatches;
  }
  return {mismatches == 0, fmt::format("500 instances up to 5x5, {} mismatches vs brute force", mismatches)};
}

Outcome hetconv_algebra() {
  using namespace netcost;
  Rng rng(5);
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    const ConvSpec s{1 + rng.below(512), 1 + rng.below(512), 1 + rng.below(2048), 1 + rng.below(2048), 3, 4};
    const Flops std_cost = std_conv_cost(s);
    const Flops het = hetconv_cost(s).total;
    if (!(std_cost / het == Flops(3))) ++bad;
    if (!(bottleneck_reduction(s) == (std_cost - het) * 2)) ++bad;
  }
  return {bad == 0, fmt::format("100 random specs, {} violations (exact rational arithmetic)", bad)};
}

Outcome fspl_values() {
  const double v = swarmplan::fspl(1000.0, 3.5e9);
  // Each doubling adds 20 log10 2 = 6.0206 dB.
  double worst = 0.0;
  for (double d = 1.0; d < 1e5; d *= 3.7) {
    worst = std::max(worst, std::abs(swarmplan::fspl(2 * d, 3.5e9) - swarmplan::fspl(d, 3.5e9) -
                                     20.0 * std::log10(2.0)));
  }
  const bool ok = std::abs(v - 103.33) <= 0.01 && worst <= 1e-6;
  return {ok, fmt::format("fspl(1000 m, 3.5 GHz) = {:.4f} dB, doubling step error {:.1e} dB", v, worst)};
}

std::vector<swarmplan::BaseStation> corners(double L) {
  return {{{-50, -50}}, {{L + 50, -50}}, {{-50, L + 50}}, {{L + 50, L + 50}}};
}

Outcome pso_sanity() {
  using namespace swarmplan;
  // (a) the full-size scenario.
  const app::Scenario scen = app::load_scenario(kData / "scenario.json");
  const auto t0 = std::chrono::steady_clock::now();
  const PlanResult big = pso_optimize(scen.planner, scen.area, scen.stations);
  const double elapsed = seconds_since(t0);
  bool monotone = big.trace.size() == 300;
  for (std::size_t i = 1; i < big.trace.size(); ++i) monotone = monotone && big.trace[i] <= big.trace[i - 1];

  // (b) tiny lattice instance against exhaustive lattice search. R sits below
  // half the cell diagonal, so the launch point alone covers no cell.
  const AreaSpec tiny{30, 15, 10};
  const auto st = corners(30);
  PlannerConfig cfg;
  cfg.n_uavs = 1;
  cfg.n_waypoints = 2;
  cfg.swarm_size = 30;
  cfg.iterations = 100;
  double lattice_best = std::numeric_limits<double>::infinity();
  for (int a = 0; a <= 6; ++a) {
    for (int b = 0; b <= 6; ++b) {
      for (int c = 0; c <= 6; ++c) {
        for (int d = 0; d <= 6; ++d) {
          UavPath p;
          p.waypoints = {{15, 15, 0}, {5.0 * a, 5.0 * b, 0}, {5.0 * c, 5.0 * d, 0}, {15, 15, 0}};
          lattice_best = std::min(lattice_best, objective_full(std::vector{p}, tiny, st, cfg).total);
        }
      }
    }
  }
  int within = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    cfg.rng_seed = seed;
    if (pso_optimize(cfg, tiny, st).parts.total <= 1.05 * lattice_best) ++within;
  }

  // (c) time to 95% coverage for 1..4 UAVs, coverage-weighted objective.
  const AreaSpec small{150, 15, 15};
  const auto st_small = corners(150);
  std::vector<double> mean_time;
  for (int n = 1; n <= 4; ++n) {
    PlannerConfig c;
    c.n_uavs = n;
    c.n_waypoints = 20;
    c.iterations = 300;
    c.alpha3 = 0.5;
    double sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      c.rng_seed = seed;
      const PlanResult r = pso_optimize(c, small, st_small);
      sum += time_to_coverage(r.paths, small, c.uav_speed, 0.95);
    }
    mean_time.push_back(sum / 10.0);
  }
  bool non_increasing = std::isfinite(mean_time[0]);
  for (std::size_t i = 1; i < mean_time.size(); ++i) non_increasing = non_increasing && mean_time[i] <= mean_time[i - 1];

  const bool ok = monotone && elapsed < 60.0 && within >= 18 && non_increasing;
  return {ok, fmt::format("(a) monotone={} in {:.2f} s; (b) {}/20 seeds within 5% of lattice optimum "
                          "{:.3f}; (c) mean time-to-95% for 1..4 UAVs: {:.0f}, {:.0f}, {:.0f}, {:.0f} s",
                          monotone, elapsed, within, lattice_best, mean_time[0], mean_time[1],
                          mean_time[2], mean_time[3])};
}

Outcome mode_ordering() {
  int violations = 0;
  for (int i = 0; i < kMissions; ++i) {
    for (const auto& preset : commsim::preset_names()) {
      app::MissionConfig config;
      config.modes = commsim::preset(preset);
      app::MissionRunner runner(config, as_data(mission(i)));
      std::map<commsim::Mode, commsim::LatencyReport> r;
      for (const auto& p : config.modes) r[p.mode] = runner.run(p).report;
      const auto& co = r[commsim::Mode::CO];
      const auto& ecc = r[commsim::Mode::ECC];
      const auto& plus = r[commsim::Mode::ECCPlus];
      if (!(plus.total_uplink_bytes <= ecc.total_uplink_bytes &&
            ecc.total_uplink_bytes <= co.total_uplink_bytes && plus.uploads <= ecc.uploads)) {
        ++violations;
      }
    }
  }
  return {violations == 0,
          fmt::format("{} missions x {} presets, {} violations", kMissions, commsim::preset_names().size(),
                      violations)};
}

Outcome determinism() {
  std::map<fs::path, std::string> first;
  int mismatches = 0;
  std::size_t files = 0;
  for (int round = 0; round < 2; ++round) {
    const fs::path root = scratch(fmt::format("c9_{}", round));
    const fs::path gen = root / "gen";
    bool ok = cli({"generate", "-o", gen.string(), "--seed", "77"}) == 0 &&
              cli({"track", "-c", (gen / "mission.json").string(), "-o", (root / "track").string()}) == 0 &&
              cli({"compare", "-c", (gen / "mission.json").string(), "-o", (root / "compare").string()}) == 0 &&
              cli({"plan", "-c", (kData / "scenario.json").string(), "-o", (root / "plan").string(),
                   "--iterations", "30", "--seed", "4"}) == 0 &&
              cli({"cost", "-c", (kData / "conv_specs.json").string(), "-o", (root / "cost").string()}) == 0;
    if (!ok) return {false, "a command failed"};
    for (const auto& e : fs::recursive_directory_iterator(root)) {
      if (!e.is_regular_file()) continue;
      const fs::path rel = fs::relative(e.path(), root);
      const std::string content = io::read_file(e.path());
      if (round == 0) {
        first[rel] = content;
      } else {
        ++files;
        if (first[rel] != content) ++mismatches;
      }
    }
  }
  const bool ok = mismatches == 0 && files == first.size() && files > 0;
  return {ok, fmt::format("{} output files from generate/track/compare/plan/cost, {} differ", files, mismatches)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"E2EL reduction (measured preset)", e2el_reduction},
      {"KSA exactness", ksa_exactness},
      {"Kalman correctness", kalman_correctness},
      {"Association optimality", association_optimality},
      {"HetConv algebra", hetconv_algebra},
      {"FSPL", fspl_values},
      {"PSO sanity", pso_sanity},
      {"Mode ordering", mode_ordering},
      {"Determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, fmt::format("threw: {}", e.what())};
    }
    failed += o.pass ? 0 : 1;
    fmt::print("{} {} {}: {}\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail);
    std::fflush(stdout);
  }
  fmt::print("{}/{} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
