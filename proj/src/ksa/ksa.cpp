#include "antinspect/ksa/ksa.hpp"

#include <fmt/core.h>

#include "antinspect/core/errors.hpp"

namespace antinspect::ksa {

void KsaConfig::validate() const {
  if (!(tau > 0.0)) throw ConfigError("ksa.tau: must be > 0");
  if (mu < 1) throw ConfigError("ksa.mu: must be >= 1");
}

std::vector<Detection> pixel_filter(std::span<const Detection> dets, double tau) {
  std::vector<Detection> kept;
  kept.reserve(dets.size());
  for (const auto& d : dets) {
    if (d.bbox.w <= tau && d.bbox.h <= tau) kept.push_back(d);
  }
  return kept;
}

std::vector<Keyframe> judge(KsaState& state, std::span<const TrackSighting> matched,
                            const KsaConfig& config) {
  std::vector<Keyframe> out;
  for (const auto& s : matched) {
    if (s.frame_index < state.last_frame) {
      throw OutOfOrderFrame(
          fmt::format("ksa: frame {} after frame {}", s.frame_index, state.last_frame));
    }
    state.last_frame = s.frame_index;
    if (state.uploaded_ids.contains(s.track_id)) continue;

    auto [it, fresh] = state.judge_table.try_emplace(s.track_id);
    KsaEntry& e = it->second;
    if (!fresh && e.last_frame == s.frame_index) continue;  // one sighting per frame
    if (!fresh && config.strict_consecutive && s.frame_index > e.last_frame + 1) {
      e = KsaEntry{};
    }
    ++e.count;
    if (e.count == 1) e.first_frame = s.frame_index;
    e.last_frame = s.frame_index;

    if (e.count >= config.mu && e.last_frame - e.first_frame <= config.mu - 1) {
      out.push_back({s.frame_index, s.track_id, s.bbox, s.class_id, s.timestamp});
      state.uploaded_ids.insert(s.track_id);
      // Uploaded ids are never judged again, so their record can go.
      state.judge_table.erase(it);
    }
  }
  return out;
}

}  // namespace antinspect::ksa
