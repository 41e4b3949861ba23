#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "aggsig/box.hpp"
#include "aggsig/kcf.hpp"
#include "aggsig/prior.hpp"
#include "aggsig/saliency.hpp"

namespace aggsig {

// Welford accumulator over accepted peak responses.
struct ResponseStats {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double r) noexcept;
  // Population variance.
  double variance() const noexcept { return count == 0 ? 0.0 : m2 / static_cast<double>(count); }
  double stddev() const noexcept;
};

enum class DriftMode {
  kZScore,   // |r - mean| / max(stddev, 1e-6) > threshold
  kLiteral,  // |r - mean| > threshold
};

inline constexpr double kStddevFloor = 1e-6;
inline constexpr std::size_t kWarmupFrames = 3;

// Throws std::logic_error while fewer than kWarmupFrames responses are in.
bool drift_detected(const ResponseStats& stats, double r, double threshold,
                    DriftMode mode = DriftMode::kZScore);

struct SearchRegion {
  RgbImage image;
  Box area;  // the region in frame coordinates; image pixel (0,0) is (area.x, area.y)
};

// Region of scale*(w,h) around the box centre, shifted and clipped into the
// frame.
SearchRegion crop_search_region(const RgbImage& frame, const Box& last_box, double scale);

struct PipelineConfig {
  KcfConfig kcf;
  bool ast_enabled = true;
  double drift_threshold = 1.6;
  DriftMode drift_mode = DriftMode::kZScore;
  PriorMode prior_mode = PriorMode::kPaper;
  int iterations = 4;
  int regions = 6;
  double xi = 1.0;
  int tau = 3;
  double hist_sigma = 0.5;
  double search_scale = 4.0;
  double blur_sigma = 0.0;  // <= 0: 0.04 * max side of the search region
  QuaternionSignMode sign_mode = QuaternionSignMode::kPolar;
  bool refresh_prior_each_iteration = false;
  // When false a drift is only reported, the tracker is not moved.
  bool relocate_on_drift = true;
};

struct CoarseCenter {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const CoarseCenter&, const CoarseCenter&) = default;
};

struct Redetection {
  CoarseCenter coarse_center;  // frame coordinates (column, row)
  SaliencyMap saliency;        // S^{R+1} over the search region
  PriorMap prior;
  Box region;
  std::vector<Box> candidates;  // search-region coordinates
  std::vector<double> weights;
};

// Saliency-driven coarse relocation around `last_box`. Falls back to the full
// frame when the clipped search region cannot hold the target.
Redetection redetect(const RgbImage& frame_t, const RgbImage& frame_t_minus_tau,
                     const Box& last_box, const Histogram& target_hist,
                     const PipelineConfig& cfg);

enum class EventKind { kNormal, kDriftDetected, kRedetected };

std::string_view to_string(EventKind kind) noexcept;
std::optional<EventKind> parse_event_kind(std::string_view text) noexcept;

struct TrackEvent {
  std::size_t frame_index = 0;  // 1-based
  EventKind kind = EventKind::kNormal;
  Box box;
  double response = 0.0;
  std::optional<CoarseCenter> coarse_center;

  friend bool operator==(const TrackEvent&, const TrackEvent&) = default;
};

// One event per frame. Frames 1..3 run the base tracker only; from frame 4 a
// drift triggers re-detection and the tracker continues from the relocated
// box. With ast_enabled == false (or an infinite threshold) this is exactly
// the bare base tracker.
std::vector<TrackEvent> track_sequence(std::span<const RgbImage> frames, const Box& init_box,
                                       const PipelineConfig& cfg = {});

// Box of the given size whose centre pixel is (x, y).
Box box_centred_on(const CoarseCenter& centre, double w, double h);

}  // namespace aggsig
