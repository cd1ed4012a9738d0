#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "antinspect/commsim/commsim.hpp"

namespace antinspect::commsim {

// "measured": measured communication / inference times and component
// powers for the cloud-only baseline (YOLOv8-n + BotSort) and the two edge
// modes running EdgeAnt + AntSort, over a 40 Mb/s uplink.
// "analytic": the same hardware figures with the communication times left to
// the analytic model.
std::vector<ModeParams> preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace antinspect::commsim
