#include "antinspect/app/output.hpp"

#include <fmt/core.h>

#include "antinspect/core/errors.hpp"

namespace antinspect::app {
namespace {

using nlohmann::json;

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

json report_fields(const commsim::LatencyReport& r) {
  return json{{"mode", commsim::to_string(r.mode)},
              {"method", r.method},
              {"uploads", r.uploads},
              {"mean_e2el", r.mean_e2el},
              {"mean_t_comm", r.mean_t_comm},
              {"mean_t_infer", r.mean_t_infer},
              {"accuracy", r.accuracy},
              {"total_uplink_bytes", r.total_uplink_bytes},
              {"energy_comm", r.energy_comm},
              {"energy_infer", r.energy_infer},
              {"saturated", r.saturated}};
}

}  // namespace

std::string tracks_csv(const std::vector<TrackRow>& rows) {
  std::string out = "frame_index,track_id,status,cx,cy,w,h,score,class_id,matched\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.frame_index, r.track_id,
                       antsort::to_string(r.status), r.box.cx, r.box.cy, r.box.w, r.box.h, r.score,
                       r.class_id, r.matched ? 1 : 0);
  }
  return out;
}

std::string uploads_jsonl(const ModeOutcome& o, const std::vector<io::TruthFrame>& truth,
                          double min_iou) {
  std::string out;
  for (const auto& k : o.stream.records) {
    const auto target = match_target(k.bbox, k.frame_index, truth, min_iou);
    json j{{"frame_index", k.frame_index},
           {"track_id", k.track_id},
           {"cx", k.bbox.cx},
           {"cy", k.bbox.cy},
           {"w", k.bbox.w},
           {"h", k.bbox.h},
           {"class_id", k.class_id},
           {"timestamp", k.upload_timestamp},
           {"target_id", target ? json(*target) : json(nullptr)}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

nlohmann::json report_json(const ModeOutcome& o) {
  json j = report_fields(o.report);
  j["records"] = o.stream.records.size();
  j["frames"] = o.stream.frame_timestamps.size();
  j["params"] = to_json(o.params);
  return j;
}

std::string e2el_csv(const commsim::LatencyReport& r) {
  std::string out = "upload,time,e2el\n";
  for (std::size_t i = 0; i < r.per_upload_e2el.size(); ++i) {
    out += fmt::format("{},{},{}\n", i, r.upload_times[i], r.per_upload_e2el[i]);
  }
  return out;
}

std::optional<double> e2el_reduction(const std::vector<ModeOutcome>& outcomes,
                                     commsim::Mode mode) {
  const commsim::LatencyReport* co = nullptr;
  const commsim::LatencyReport* other = nullptr;
  for (const auto& o : outcomes) {
    if (o.report.mode == commsim::Mode::CO) co = &o.report;
    if (o.report.mode == mode) other = &o.report;
  }
  if (!co || !other || co->uploads == 0 || co->mean_e2el <= 0.0) return std::nullopt;
  return 1.0 - other->mean_e2el / co->mean_e2el;
}

std::string compare_csv(const std::vector<ModeOutcome>& outcomes) {
  std::string out =
      "mode,method,uploads,records,mean_t_comm,mean_t_infer,mean_e2el,e2el_reduction,accuracy,"
      "uplink_bytes,energy_comm,energy_infer,energy_total,saturated\n";
  for (const auto& o : outcomes) {
    const auto& r = o.report;
    const auto red = e2el_reduction(outcomes, r.mode);
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", commsim::to_string(r.mode),
                       csv_field(r.method), r.uploads, o.stream.records.size(), r.mean_t_comm,
                       r.mean_t_infer, r.mean_e2el, red ? fmt::format("{}", *red) : std::string(),
                       r.accuracy, r.total_uplink_bytes, r.energy_comm, r.energy_infer,
                       r.energy_comm + r.energy_infer, r.saturated ? 1 : 0);
  }
  return out;
}

nlohmann::json plan_json(const swarmplan::PlanResult& plan, const Scenario& scenario) {
  const auto& p = plan.parts;
  json paths = json::array();
  for (const auto& path : plan.paths) {
    json wps = json::array();
    for (const auto& w : path.waypoints) wps.push_back({{"x", w.x}, {"y", w.y}, {"theta", w.theta}});
    paths.push_back({{"length", path.length()}, {"waypoints", wps}});
  }
  return json{{"scenario", to_json(scenario)},
              {"objective",
               {{"path_len", p.path_len},
                {"fspl_term", p.fspl_term},
                {"handover_term", p.handover_term},
                {"coverage_term", p.coverage_term},
                {"sinr_term", p.sinr_term},
                {"collision_term", p.collision_term},
                {"endurance_excess", p.endurance_excess},
                {"j", p.j},
                {"j_prime", p.j_prime},
                {"j_full", p.j_full},
                {"total", p.total}}},
              {"coverage_fraction", plan.coverage_fraction},
              {"handovers", plan.handovers},
              {"evaluations", plan.evaluations},
              {"paths", paths}};
}

std::string waypoints_csv(const swarmplan::PlanResult& plan) {
  std::string out = "uav,index,x,y,theta,station\n";
  for (std::size_t u = 0; u < plan.paths.size(); ++u) {
    const auto& wps = plan.paths[u].waypoints;
    for (std::size_t i = 0; i < wps.size(); ++i) {
      out += fmt::format("{},{},{},{},{},{}\n", u, i, wps[i].x, wps[i].y, wps[i].theta,
                         plan.serving[u][i]);
    }
  }
  return out;
}

std::string trace_csv(const swarmplan::PlanResult& plan) {
  std::string out = "round,gbest\n";
  for (std::size_t i = 0; i < plan.trace.size(); ++i) out += fmt::format("{},{}\n", i, plan.trace[i]);
  return out;
}

std::string handovers_csv(const swarmplan::PlanResult& plan) {
  std::string out = "uav,handovers\n";
  for (std::size_t u = 0; u < plan.handovers.size(); ++u) {
    out += fmt::format("{},{}\n", u, plan.handovers[u]);
  }
  return out;
}

std::string cost_csv(const std::vector<NamedConvSpec>& specs) {
  std::string out = "spec,std,het_3x3,het_1x1,het_total,reduction_R\n";
  for (const auto& s : specs) {
    const auto std_cost = netcost::std_conv_cost(s.spec);
    const auto het = netcost::hetconv_cost(s.spec);
    std::string r;
    if (s.spec.kernel == 3 && s.spec.part == 4) r = netcost::bottleneck_reduction(s.spec).str();
    out += fmt::format("{},{},{},{},{},{}\n", csv_field(s.name), std_cost.str(), het.large.str(),
                       het.point.str(), het.total.str(), r);
  }
  return out;
}

}  // namespace antinspect::app
