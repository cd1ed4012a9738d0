#include "antinspect/app/commands.hpp"

#include <fmt/core.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <ostream>
#include <sstream>

#include "antinspect/app/config.hpp"
#include "antinspect/app/output.hpp"
#include "antinspect/app/pipeline.hpp"
#include "antinspect/app/synth.hpp"
#include "antinspect/core/errors.hpp"
#include "antinspect/swarmplan/pso.hpp"

namespace antinspect::app {
namespace {

namespace fs = std::filesystem;

void require_config(const GlobalOptions& opts) {
  if (opts.config.empty()) throw ConfigError("--config is required for this command");
}

MissionConfig mission_with_overrides(const GlobalOptions& opts) {
  require_config(opts);
  MissionConfig c = load_mission(opts.config);
  if (opts.seed) {
    for (auto& m : c.modes) m.seed = *opts.seed;
  }
  return c;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace

void cmd_track(const GlobalOptions& opts, const std::optional<std::string>& mode,
               std::ostream& log) {
  MissionConfig config = mission_with_overrides(opts);
  if (mode) config.mode = commsim::parse_mode(*mode);
  const commsim::ModeParams params = config.selected_mode();

  MissionRunner runner(config, load_mission_data(config));
  const ModeOutcome o = runner.run(params);

  io::OutputSet out;
  out.add(opts.out_dir / "tracks.csv", tracks_csv(o.edge->rows));
  out.add(opts.out_dir / "uploads.jsonl", uploads_jsonl(o, runner.data().truth, config.label_iou));
  nlohmann::json report = report_json(o);
  report["tracker"] = to_json(config.tracker);
  report["ksa"] = to_json(config.ksa);
  report["duration"] = runner.duration();
  out.add(opts.out_dir / "report.json", dump(report));
  out.add(opts.out_dir / "e2el.csv", e2el_csv(o.report));
  out.commit();

  fmt::print(log, "{}: {} frames, {} records, {} uploads, mean E2EL {:.4f} s, accuracy {:.4f}\n",
             commsim::to_string(params.mode), o.stream.frame_timestamps.size(),
             o.stream.records.size(), o.report.uploads, o.report.mean_e2el, o.report.accuracy);
}

void cmd_compare(const GlobalOptions& opts, const std::vector<std::string>& modes,
                 std::ostream& log) {
  const MissionConfig config = mission_with_overrides(opts);
  std::vector<commsim::ModeParams> selected;
  if (modes.empty()) {
    selected = config.modes;
  } else {
    for (const auto& name : modes) {
      const commsim::Mode m = commsim::parse_mode(name);
      auto it = std::find_if(config.modes.begin(), config.modes.end(),
                             [&](const auto& p) { return p.mode == m; });
      if (it == config.modes.end()) {
        throw ConfigError(fmt::format("--modes: no parameters for mode {}", name));
      }
      selected.push_back(*it);
    }
  }

  MissionRunner runner(config, load_mission_data(config));
  std::vector<ModeOutcome> outcomes;
  for (const auto& p : selected) outcomes.push_back(runner.run(p));

  io::OutputSet out;
  out.add(opts.out_dir / "compare.csv", compare_csv(outcomes));
  out.commit();

  for (const auto& o : outcomes) {
    const auto red = e2el_reduction(outcomes, o.report.mode);
    fmt::print(log, "{:8} mean E2EL {:8.1f} ms  uploads {:6}  bytes {:12.0f}{}\n",
               commsim::to_string(o.report.mode), o.report.mean_e2el * 1e3, o.report.uploads,
               o.report.total_uplink_bytes,
               red && o.report.mode != commsim::Mode::CO
                   ? fmt::format("  reduction {:.1f}%", *red * 100.0)
                   : std::string());
  }
}

void cmd_plan(const GlobalOptions& opts, std::optional<int> iterations, std::ostream& log) {
  require_config(opts);
  Scenario s = load_scenario(opts.config);
  if (opts.seed) s.planner.rng_seed = *opts.seed;
  if (iterations) s.planner.iterations = *iterations;
  s.planner.validate();
  const swarmplan::PlanResult plan = swarmplan::pso_optimize(s.planner, s.area, s.stations);

  io::OutputSet out;
  out.add(opts.out_dir / "plan.json", dump(plan_json(plan, s)));
  out.add(opts.out_dir / "waypoints.csv", waypoints_csv(plan));
  out.add(opts.out_dir / "trace.csv", trace_csv(plan));
  out.add(opts.out_dir / "handovers.csv", handovers_csv(plan));
  out.commit();

  fmt::print(log, "plan: objective {:.4f}, coverage {:.1f}%, {} evaluations\n", plan.parts.total,
             plan.coverage_fraction * 100.0, plan.evaluations);
}

void cmd_cost(const GlobalOptions& opts, std::ostream& log) {
  require_config(opts);
  const auto specs = load_conv_specs(opts.config);
  io::OutputSet out;
  const std::string csv = cost_csv(specs);
  out.add(opts.out_dir / "cost.csv", csv);
  out.commit();
  fmt::print(log, "{}", csv);
}

void cmd_generate(const GlobalOptions& opts, std::ostream& log) {
  SynthConfig c;
  if (!opts.config.empty()) c = parse_synth(read_json(opts.config));
  if (opts.seed) c.seed = *opts.seed;
  const SyntheticMission m = generate_mission(c);

  nlohmann::json mission{{"detections", "detections.jsonl"},
                         {"imu", "imu.jsonl"},
                         {"truth", "truth.jsonl"},
                         {"preset", "measured"},
                         {"mode", "ECCPlus"},
                         {"tracker", {{"imu_scale", c.imu_scale}, {"dt", 1.0 / c.fps}}}};
  io::OutputSet out;
  out.add(opts.out_dir / "detections.jsonl", io::format_detections(m.frames));
  out.add(opts.out_dir / "imu.jsonl", io::format_imu(m.imu));
  out.add(opts.out_dir / "truth.jsonl", io::format_truth(m.truth));
  out.add(opts.out_dir / "mission.json", dump(mission));
  out.commit();
  fmt::print(log, "generated {} frames, {} targets (seed {})\n", m.frames.size(), c.n_targets,
             c.seed);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"UAV antenna-inspection toolkit: tracking, keyframe upload, latency, planning"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opts;
  std::uint64_t seed = 0;
  std::string out_dir = opts.out_dir.string();
  std::string config;
  app.add_option("-c,--config", config, "Config file for the command");
  app.add_option("-o,--out", out_dir, "Output directory")->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed, "Override the seed in the config");
  app.add_flag("-v,--verbose", opts.verbosity, "Print progress (repeat for more)");

  std::optional<std::string> mode;
  auto* track = app.add_subcommand("track", "Run tracker + keyframe selection over a mission");
  track->add_option("--mode", mode, "Mode to simulate (CO, ECC, ECCPlus)");

  std::vector<std::string> modes;
  auto* compare = app.add_subcommand("compare", "Compare deployment modes on one mission");
  compare->add_option("--modes", modes, "Modes to compare (default: all configured)")
      ->delimiter(',');

  std::optional<int> iterations;
  auto* plan = app.add_subcommand("plan", "Optimise multi-UAV inspection paths");
  plan->add_option("--iterations", iterations, "Override the PSO round count");

  auto* cost = app.add_subcommand("cost", "Tabulate convolution FLOP costs");
  auto* generate = app.add_subcommand("generate", "Write a seeded synthetic mission");

  std::vector<std::string> argv_store = args;
  if (argv_store.empty()) argv_store.emplace_back("antinspect");
  std::vector<const char*> argv;
  argv.reserve(argv_store.size());
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  opts.config = config;
  opts.out_dir = out_dir;
  if (seed_opt->count() > 0) opts.seed = seed;
  std::ostringstream sink;
  std::ostream& log = opts.verbosity > 0 ? out : sink;

  try {
    if (track->parsed()) {
      cmd_track(opts, mode, log);
    } else if (compare->parsed()) {
      cmd_compare(opts, modes, out);
    } else if (plan->parsed()) {
      cmd_plan(opts, iterations, log);
    } else if (cost->parsed()) {
      cmd_cost(opts, log);
    } else if (generate->parsed()) {
      cmd_generate(opts, log);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace antinspect::app
