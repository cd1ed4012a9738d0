#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "antinspect/app/config.hpp"
#include "antinspect/app/pipeline.hpp"
#include "antinspect/swarmplan/pso.hpp"

namespace antinspect::app {

// Every emitter returns the complete file text. CSV files start with a header
// row; numbers use the shortest representation that round-trips.

/// frame_index,track_id,status,cx,cy,w,h,score,class_id,matched
std::string tracks_csv(const std::vector<TrackRow>& rows);

/// One JSON object per delivered record, in delivery order.
std::string uploads_jsonl(const ModeOutcome& outcome, const std::vector<io::TruthFrame>& truth,
                          double min_iou);

nlohmann::json report_json(const ModeOutcome& outcome);

/// upload,time,e2el
std::string e2el_csv(const commsim::LatencyReport& report);

/// mode,method,uploads,records,mean_t_comm,mean_t_infer,mean_e2el,e2el_reduction,accuracy,
/// uplink_bytes,energy_comm,energy_infer,energy_total,saturated
/// e2el_reduction is 1 - mean_e2el / mean_e2el(CO), empty without a CO row.
std::string compare_csv(const std::vector<ModeOutcome>& outcomes);

/// Reduction of mean E2EL relative to CO, when both are present.
std::optional<double> e2el_reduction(const std::vector<ModeOutcome>& outcomes,
                                     commsim::Mode mode);

nlohmann::json plan_json(const swarmplan::PlanResult& plan, const Scenario& scenario);
/// uav,index,x,y,theta,station
std::string waypoints_csv(const swarmplan::PlanResult& plan);
/// round,gbest
std::string trace_csv(const swarmplan::PlanResult& plan);
/// uav,handovers
std::string handovers_csv(const swarmplan::PlanResult& plan);

/// spec,std,het_3x3,het_1x1,het_total,reduction_R
std::string cost_csv(const std::vector<NamedConvSpec>& specs);

}  // namespace antinspect::app
