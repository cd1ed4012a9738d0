#include "antinspect/core/io.hpp"

#include <fmt/core.h>

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "antinspect/core/errors.hpp"

namespace antinspect::io {
namespace {

using nlohmann::json;

template <typename Fn>
void for_each_line(std::string_view text, std::string_view what, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    json j;
    try {
      j = json::parse(line);
      fn(j, line_no);
    } catch (const json::exception& e) {
      throw ParseError(fmt::format("{} line {}: {}", what, line_no, e.what()));
    }
    if (end == text.size()) break;
  }
}

double number(const json& j, const char* key, std::string_view what, std::size_t line) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ParseError(fmt::format("{} line {}: missing numeric field '{}'", what, line, key));
  }
  return j.at(key).get<double>();
}

std::int64_t integer(const json& j, const char* key, std::string_view what, std::size_t line) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw ParseError(fmt::format("{} line {}: missing integer field '{}'", what, line, key));
  }
  return j.at(key).get<std::int64_t>();
}

BoundingBox box_from(const json& j, std::string_view what, std::size_t line) {
  BoundingBox b{number(j, "cx", what, line), number(j, "cy", what, line),
                number(j, "w", what, line), number(j, "h", what, line)};
  if (!b.valid()) {
    throw ParseError(fmt::format("{} line {}: box must be finite with w > 0 and h > 0", what, line));
  }
  return b;
}

json box_json(const BoundingBox& b) {
  return json{{"cx", b.cx}, {"cy", b.cy}, {"w", b.w}, {"h", b.h}};
}

void check_frame_order(std::int64_t prev, std::int64_t cur, std::string_view what,
                       std::size_t line) {
  if (cur <= prev) {
    throw ParseError(fmt::format("{} line {}: frame_index {} does not increase (previous {})", what,
                                 line, cur, prev));
  }
}

}  // namespace

std::vector<FrameRecord> parse_detections(std::string_view text) {
  constexpr std::string_view what = "detections";
  std::vector<FrameRecord> frames;
  for_each_line(text, what, [&](const json& j, std::size_t line) {
    FrameRecord f;
    f.frame_index = integer(j, "frame_index", what, line);
    f.timestamp = number(j, "timestamp", what, line);
    if (f.frame_index < 0) throw ParseError(fmt::format("{} line {}: negative frame_index", what, line));
    if (!frames.empty()) {
      check_frame_order(frames.back().frame_index, f.frame_index, what, line);
      if (f.timestamp < frames.back().timestamp) {
        throw ParseError(fmt::format("{} line {}: timestamp decreases", what, line));
      }
    }
    if (j.contains("detections")) {
      for (const auto& d : j.at("detections")) {
        Detection det;
        det.bbox = box_from(d, what, line);
        det.score = number(d, "score", what, line);
        det.class_id = static_cast<ClassId>(integer(d, "class_id", what, line));
        if (!det.valid()) {
          throw ParseError(fmt::format("{} line {}: score must lie in [0, 1]", what, line));
        }
        f.detections.push_back(det);
      }
    }
    frames.push_back(std::move(f));
  });
  return frames;
}

std::vector<ImuSample> parse_imu(std::string_view text) {
  constexpr std::string_view what = "imu";
  std::vector<ImuSample> samples;
  for_each_line(text, what, [&](const json& j, std::size_t line) {
    ImuSample s{integer(j, "frame_index", what, line), number(j, "ax", what, line),
                number(j, "ay", what, line), number(j, "az", what, line)};
    if (!s.valid()) throw ParseError(fmt::format("{} line {}: non-finite acceleration", what, line));
    if (!samples.empty()) check_frame_order(samples.back().frame_index, s.frame_index, what, line);
    samples.push_back(s);
  });
  return samples;
}

std::vector<TruthFrame> parse_truth(std::string_view text) {
  constexpr std::string_view what = "truth";
  std::vector<TruthFrame> frames;
  for_each_line(text, what, [&](const json& j, std::size_t line) {
    TruthFrame f;
    f.frame_index = integer(j, "frame_index", what, line);
    if (!frames.empty()) check_frame_order(frames.back().frame_index, f.frame_index, what, line);
    if (j.contains("targets")) {
      for (const auto& t : j.at("targets")) {
        f.targets.push_back({integer(t, "target_id", what, line), box_from(t, what, line),
                             static_cast<ClassId>(integer(t, "class_id", what, line))});
      }
    }
    frames.push_back(std::move(f));
  });
  return frames;
}

std::string format_detections(const std::vector<FrameRecord>& frames) {
  std::string out;
  for (const auto& f : frames) {
    json dets = json::array();
    for (const auto& d : f.detections) {
      json jd = box_json(d.bbox);
      jd["score"] = d.score;
      jd["class_id"] = d.class_id;
      dets.push_back(std::move(jd));
    }
    json j{{"frame_index", f.frame_index}, {"timestamp", f.timestamp}, {"detections", dets}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string format_imu(const std::vector<ImuSample>& samples) {
  std::string out;
  for (const auto& s : samples) {
    out += json{{"frame_index", s.frame_index}, {"ax", s.ax}, {"ay", s.ay}, {"az", s.az}}.dump();
    out += '\n';
  }
  return out;
}

std::string format_truth(const std::vector<TruthFrame>& frames) {
  std::string out;
  for (const auto& f : frames) {
    json targets = json::array();
    for (const auto& t : f.targets) {
      json jt = box_json(t.bbox);
      jt["target_id"] = t.target_id;
      jt["class_id"] = t.class_id;
      targets.push_back(std::move(jt));
    }
    out += json{{"frame_index", f.frame_index}, {"targets", targets}}.dump();
    out += '\n';
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write {}", tmp.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(fmt::format("short write to {}", tmp.string()));
  }
  std::filesystem::rename(tmp, path);
}

void OutputSet::add(std::filesystem::path path, std::string content) {
  files_[std::move(path)] = std::move(content);
}

void OutputSet::commit() const {
  for (const auto& [path, content] : files_) write_file_atomic(path, content);
}

}  // namespace antinspect::io
