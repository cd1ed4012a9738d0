#include <doctest.h>

#include "antinspect/core/errors.hpp"
#include "antinspect/ksa/ksa.hpp"

using namespace antinspect;
using namespace antinspect::ksa;

namespace {

std::vector<Keyframe> feed(KsaState& st, const KsaConfig& cfg, std::int64_t id,
                           const std::vector<std::int64_t>& frames) {
  std::vector<Keyframe> out;
  for (auto f : frames) {
    const TrackSighting s{id, f, {10, 10, 20, 20}, 0, static_cast<double>(f)};
    auto k = judge(st, std::span(&s, 1), cfg);
    out.insert(out.end(), k.begin(), k.end());
  }
  return out;
}

}  // namespace

TEST_CASE("pixel filter keeps boxes no larger than tau on both sides") {
  const std::vector<Detection> dets{{{0, 0, 120, 120}, 0.9, 0},
                                    {{0, 0, 121, 10}, 0.9, 0},
                                    {{0, 0, 10, 121}, 0.9, 0},
                                    {{0, 0, 50, 60}, 0.9, 1}};
  const auto kept = pixel_filter(dets, 120.0);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0] == dets[0]);
  CHECK(kept[1] == dets[3]);
}

TEST_CASE("mu consecutive sightings produce exactly one keyframe") {
  KsaConfig cfg;
  KsaState st;
  const auto k = feed(st, cfg, 4, {10, 11, 12, 13, 14, 15, 16, 17, 18});
  REQUIRE(k.size() == 1);
  CHECK(k[0].frame_index == 15);
  CHECK(k[0].track_id == 4);
  CHECK(st.uploaded_ids.contains(4));
  CHECK_FALSE(st.judge_table.contains(4));
}

TEST_CASE("fewer than mu sightings never upload") {
  KsaConfig cfg;
  KsaState st;
  CHECK(feed(st, cfg, 1, {0, 1, 2, 3, 4}).empty());
}

TEST_CASE("a gap widens the window permanently by default and restarts in strict mode") {
  KsaConfig literal;
  KsaState a;
  CHECK(feed(a, literal, 1, {1, 2, 3, 5, 6, 7}).empty());
  CHECK(feed(a, literal, 1, {8, 9, 10, 11}).empty());

  KsaConfig strict;
  strict.strict_consecutive = true;
  KsaState b;
  CHECK(feed(b, strict, 1, {1, 2, 3, 5, 6, 7}).empty());
  const auto k = feed(b, strict, 1, {8, 9, 10});
  REQUIRE(k.size() == 1);
  CHECK(k[0].frame_index == 10);
}

TEST_CASE("duplicate sightings on one frame count once") {
  KsaConfig cfg;
  cfg.mu = 3;
  KsaState st;
  CHECK(feed(st, cfg, 2, {0, 0, 1, 1}).empty());
  CHECK(feed(st, cfg, 2, {2}).size() == 1);
}

TEST_CASE("ids are uploaded at most once across many tracks") {
  KsaConfig cfg;
  KsaState st;
  std::size_t total = 0;
  for (std::int64_t f = 0; f < 50; ++f) {
    std::vector<TrackSighting> s;
    for (std::int64_t id = 1; id <= 5; ++id) s.push_back({id, f, {0, 0, 10, 10}, 0, 0.0});
    total += judge(st, s, cfg).size();
  }
  CHECK(total == 5);
  CHECK(st.judge_table.empty());
}

TEST_CASE("disabled config uploads every id on first sight") {
  KsaState st;
  const auto k = feed(st, KsaConfig::disabled(), 9, {3, 4, 5});
  REQUIRE(k.size() == 1);
  CHECK(k[0].frame_index == 3);
}

TEST_CASE("frames must not go backwards and config is validated") {
  KsaConfig cfg;
  KsaState st;
  feed(st, cfg, 1, {5});
  CHECK_THROWS_AS(feed(st, cfg, 2, {4}), OutOfOrderFrame);
  CHECK_THROWS_AS((KsaConfig{0.0, 6, false}.validate()), ConfigError);
  CHECK_THROWS_AS((KsaConfig{120.0, 0, false}.validate()), ConfigError);
}
