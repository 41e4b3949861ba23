#include <cmath>
#include <limits>
#include <stdexcept>

#include "aggsig/eval.hpp"
#include "aggsig/pipeline.hpp"
#include "aggsig/synthetic.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aggsig;

namespace {

RgbImage grey_with_squares(std::size_t rows, std::size_t cols,
                           const std::vector<std::pair<Box, double>>& squares) {
  Matrix m(rows, cols, 0.5);
  for (const auto& [b, level] : squares) {
    for (std::size_t r = static_cast<std::size_t>(b.y); r < static_cast<std::size_t>(b.y + b.h); ++r) {
      for (std::size_t c = static_cast<std::size_t>(b.x); c < static_cast<std::size_t>(b.x + b.w); ++c) {
        m(r, c) = level;
      }
    }
  }
  return {m, m, m};
}

std::vector<Box> boxes_of(const std::vector<TrackEvent>& events) {
  std::vector<Box> out;
  for (const auto& e : events) out.push_back(e.box);
  return out;
}

}  // namespace

TEST_CASE("response stats") {
  ResponseStats stats;
  CHECK(stats.variance() == 0.0);
  const std::vector<double> values{0.9, 0.95, 0.97, 0.4, 1.2, 0.88};
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    stats.add(values[i]);
    sum += values[i];
    const double mean = sum / static_cast<double>(i + 1);
    CHECK(std::abs(stats.mean - mean) < 1e-12);
    double var = 0.0;
    for (std::size_t k = 0; k <= i; ++k) var += (values[k] - mean) * (values[k] - mean);
    CHECK(stats.variance() == doctest::Approx(var / static_cast<double>(i + 1)).epsilon(1e-12));
  }
}

TEST_CASE("drift_detected") {
  ResponseStats stats;
  stats.add(0.9);
  stats.add(0.9);
  CHECK_THROWS_AS(drift_detected(stats, 0.9, 1.6), std::logic_error);
  stats.add(0.9);
  CHECK_FALSE(drift_detected(stats, stats.mean, 1.6));
  CHECK_FALSE(drift_detected(stats, stats.mean, 1.6, DriftMode::kLiteral));

  ResponseStats jitter;
  for (int i = 0; i < 30; ++i) jitter.add(0.95 + (i % 3 - 1) * 0.01);
  const double z = std::abs(0.30 - jitter.mean) / jitter.stddev();
  CHECK(z > 1.6);
  CHECK(drift_detected(jitter, 0.30, 1.6));
  CHECK_FALSE(drift_detected(jitter, 0.30, 1.6, DriftMode::kLiteral));
  CHECK(drift_detected(jitter, 0.30, 0.5, DriftMode::kLiteral));
  CHECK_FALSE(drift_detected(jitter, 0.30, std::numeric_limits<double>::infinity()));

  // A perfectly flat history falls back to the floor.
  CHECK(drift_detected(stats, 0.9 + 1e-5, 1.6));
  CHECK_FALSE(drift_detected(stats, 0.9 + 1e-6, 1.6));
}

TEST_CASE("crop_search_region") {
  RgbImage frame{oracle::random_matrix(60, 80, 1, 0, 1), oracle::random_matrix(60, 80, 2, 0, 1),
                 oracle::random_matrix(60, 80, 3, 0, 1)};
  const Box box{30, 20, 10, 8};
  const SearchRegion same = crop_search_region(frame, box, 1.0);
  CHECK(same.area == box);
  CHECK(same.image.r == submatrix(frame.r, 20, 30, 8, 10));

  const SearchRegion wide = crop_search_region(frame, box, 4.0);
  CHECK(wide.area == Box{15, 8, 40, 32});
  CHECK(wide.area.cx() == box.cx());
  CHECK(wide.area.cy() == box.cy());

  const SearchRegion corner = crop_search_region(frame, {2, 1, 10, 8}, 4.0);
  CHECK(corner.area == Box{0, 0, 40, 32});
  for (std::size_t r = 0; r < 32; r += 7) {
    for (std::size_t c = 0; c < 40; c += 9) {
      const auto fr = static_cast<std::size_t>(corner.area.y) + r;
      const auto fc = static_cast<std::size_t>(corner.area.x) + c;
      CHECK(corner.image.g(r, c) == frame.g(fr, fc));
    }
  }

  const SearchRegion huge = crop_search_region(frame, box, 20.0);
  CHECK(huge.area == Box{0, 0, 80, 60});
  CHECK_THROWS_AS(crop_search_region(frame, box, 0.0), std::invalid_argument);
}

TEST_CASE("redetect on a uniform frame is deterministic") {
  const RgbImage flat = grey_with_squares(60, 60, {});
  Histogram h;
  h.bins[128] = 1.0;
  PipelineConfig cfg;
  const Redetection a = redetect(flat, flat, {25, 25, 8, 8}, h, cfg);
  const Redetection b = redetect(flat, flat, {25, 25, 8, 8}, h, cfg);
  CHECK(a.coarse_center == b.coarse_center);
  CHECK(a.coarse_center.x >= a.region.x);
  CHECK(a.coarse_center.x < a.region.x + a.region.w);
  CHECK(a.coarse_center.y >= a.region.y);
  CHECK(a.coarse_center.y < a.region.y + a.region.h);
}

TEST_CASE("redetect prefers the target-like blob") {
  const Box target{20, 44, 8, 8};
  const Box distractor{52, 20, 8, 8};
  const RgbImage frame = grey_with_squares(80, 80, {{target, 0.9}, {distractor, 0.1}});
  const Histogram h = grayscale_histogram(intensity(frame), target);
  PipelineConfig cfg;
  cfg.prior_mode = PriorMode::kSimilarityDecay;
  const Redetection found = redetect(frame, frame, {36, 32, 8, 8}, h, cfg);
  CHECK(found.coarse_center.x >= target.x);
  CHECK(found.coarse_center.x < target.x + target.w);
  CHECK(found.coarse_center.y >= target.y);
  CHECK(found.coarse_center.y < target.y + target.h);

  // Outside the candidates the prior is exactly one.
  const PriorMap rebuilt = assemble_prior_map(found.prior.values.rows(), found.prior.values.cols(),
                                              found.candidates, found.weights);
  CHECK(rebuilt.values == found.prior.values);
  std::size_t ones = 0;
  for (double v : found.prior.values.data()) ones += v == 1.0 ? 1 : 0;
  CHECK(ones > 0);
  CHECK(found.candidates.size() == 6);
  CHECK(found.saliency.values.same_shape(found.prior.values));
}

TEST_CASE("redetect falls back to the whole frame") {
  const RgbImage frame = grey_with_squares(30, 30, {{{10, 10, 6, 6}, 0.9}});
  Histogram h;
  h.bins[230] = 1.0;
  PipelineConfig cfg;
  cfg.search_scale = 0.5;
  const Redetection r = redetect(frame, frame, {10, 10, 6, 6}, h, cfg);
  CHECK(r.region == Box{0, 0, 30, 30});
}

TEST_CASE("event kind names") {
  for (EventKind k : {EventKind::kNormal, EventKind::kDriftDetected, EventKind::kRedetected}) {
    CHECK(parse_event_kind(to_string(k)) == k);
  }
  CHECK_FALSE(parse_event_kind("lost").has_value());
}

TEST_CASE("track_sequence basics") {
  JumpSequenceParams p;
  p.seed = 3;
  const JumpSequence seq = synth_jump_sequence(p);
  PipelineConfig cfg;
  cfg.prior_mode = PriorMode::kSimilarityDecay;
  const auto events = track_sequence(seq.frames, seq.ground_truth.front(), cfg);
  REQUIRE(events.size() == seq.frames.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    CHECK(events[i].frame_index == i + 1);
    if (events[i].frame_index <= kWarmupFrames) CHECK(events[i].kind == EventKind::kNormal);
    CHECK(events[i].coarse_center.has_value() == (events[i].kind == EventKind::kRedetected));
  }
  CHECK(events.front().box == seq.ground_truth.front());
  CHECK(track_sequence(seq.frames, seq.ground_truth.front(), cfg) == events);

  CHECK_THROWS_AS(track_sequence({}, seq.ground_truth.front(), cfg), std::invalid_argument);
  PipelineConfig bad = cfg;
  bad.tau = -1;
  CHECK_THROWS_AS(track_sequence(seq.frames, seq.ground_truth.front(), bad), std::invalid_argument);
}

TEST_CASE("infinite threshold equals the bare base tracker") {
  for (std::uint64_t seed : {0u, 7u}) {
    JumpSequenceParams p;
    p.seed = seed;
    p.drift_speed = 0.5;
    p.frozen_noise = false;
    const JumpSequence seq = synth_jump_sequence(p);
    PipelineConfig off;
    off.ast_enabled = false;
    PipelineConfig inf;
    inf.drift_threshold = std::numeric_limits<double>::infinity();
    const auto a = track_sequence(seq.frames, seq.ground_truth.front(), off);
    const auto b = track_sequence(seq.frames, seq.ground_truth.front(), inf);
    CHECK(a == b);

    TrackerState state = tracker_init(seq.frames[0], seq.ground_truth[0]);
    for (std::size_t i = 1; i < seq.frames.size(); ++i) {
      const Detection d = tracker_detect(state, seq.frames[i]);
      CHECK(d.box == a[i].box);
      CHECK(d.response == a[i].response);
      state = tracker_update(state, seq.frames[i], d.box);
    }
  }
}

TEST_CASE("report-only mode leaves the trajectory alone") {
  JumpSequenceParams p;
  p.seed = 1;
  const JumpSequence seq = synth_jump_sequence(p);
  PipelineConfig off;
  off.ast_enabled = false;
  PipelineConfig report;
  report.relocate_on_drift = false;
  const auto base = track_sequence(seq.frames, seq.ground_truth.front(), off);
  const auto flagged = track_sequence(seq.frames, seq.ground_truth.front(), report);
  REQUIRE(base.size() == flagged.size());
  std::size_t drifts = 0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(base[i].box == flagged[i].box);
    CHECK(flagged[i].kind != EventKind::kRedetected);
    drifts += flagged[i].kind == EventKind::kDriftDetected ? 1 : 0;
  }
  CHECK(drifts > 0);
  CHECK(flagged[p.jump_frame - 1].kind == EventKind::kDriftDetected);
}

TEST_CASE("re-detection recovers a teleported target") {
  JumpSequenceParams p;
  p.seed = 2;
  const JumpSequence seq = synth_jump_sequence(p);
  PipelineConfig ast;
  ast.prior_mode = PriorMode::kSimilarityDecay;
  PipelineConfig off;
  off.ast_enabled = false;
  const auto with = track_sequence(seq.frames, seq.ground_truth.front(), ast);
  const auto without = track_sequence(seq.frames, seq.ground_truth.front(), off);
  CHECK(with[p.jump_frame - 1].kind == EventKind::kRedetected);
  CHECK(iou(with.back().box, seq.ground_truth.back()) > 0.3);
  CHECK(iou(without.back().box, seq.ground_truth.back()) < 0.1);
  CHECK(success_curve(boxes_of(with), seq.ground_truth).summary >
        success_curve(boxes_of(without), seq.ground_truth).summary);
}

TEST_CASE("box_centred_on") {
  CHECK(box_centred_on({20, 30}, 10, 7) == Box{15, 27, 10, 7});
}

TEST_CASE("jump sequence generator") {
  JumpSequenceParams p;
  p.seed = 9;
  const JumpSequence a = synth_jump_sequence(p);
  const JumpSequence b = synth_jump_sequence(p);
  CHECK(a.frames == b.frames);
  CHECK(a.ground_truth == b.ground_truth);
  REQUIRE(a.frames.size() == 40);
  const Box& before = a.ground_truth[p.jump_frame - 2];
  const Box& after = a.ground_truth[p.jump_frame - 1];
  CHECK(centre_distance(before, after) > 2.0 * static_cast<double>(p.target_size));
  CHECK(a.frames[0] == a.frames[p.jump_frame - 2]);

  p.target_size = 3;
  CHECK_THROWS_AS(synth_jump_sequence(p), std::invalid_argument);
}
