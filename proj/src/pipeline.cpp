#include "aggsig/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aggsig/filter.hpp"

namespace aggsig {

void ResponseStats::add(double r) noexcept {
  ++count;
  const double delta = r - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (r - mean);
}

double ResponseStats::stddev() const noexcept { return std::sqrt(std::max(0.0, variance())); }

bool drift_detected(const ResponseStats& stats, double r, double threshold, DriftMode mode) {
  if (stats.count < kWarmupFrames) {
    throw std::logic_error("drift_detected: called before the warm-up frames were ingested");
  }
  const double gap = std::abs(r - stats.mean);
  if (mode == DriftMode::kLiteral) return gap > threshold;
  return gap / std::max(stats.stddev(), kStddevFloor) > threshold;
}

SearchRegion crop_search_region(const RgbImage& frame, const Box& last_box, double scale) {
  if (frame.empty() || !last_box.valid() || !(scale > 0.0)) {
    throw std::invalid_argument("crop_search_region: empty frame, degenerate box or scale");
  }
  const auto rows = static_cast<double>(frame.rows());
  const auto cols = static_cast<double>(frame.cols());
  const double w = std::min(cols, std::max(1.0, std::round(last_box.w * scale)));
  const double h = std::min(rows, std::max(1.0, std::round(last_box.h * scale)));
  const double x = std::clamp(std::round(last_box.cx() - w / 2.0), 0.0, cols - w);
  const double y = std::clamp(std::round(last_box.cy() - h / 2.0), 0.0, rows - h);

  SearchRegion region;
  region.area = {x, y, w, h};
  region.image = crop(frame, static_cast<std::size_t>(y), static_cast<std::size_t>(x),
                      static_cast<std::size_t>(h), static_cast<std::size_t>(w));
  return region;
}

Box box_centred_on(const CoarseCenter& centre, double w, double h) {
  return {centre.x - std::floor(w / 2.0), centre.y - std::floor(h / 2.0), w, h};
}

Redetection redetect(const RgbImage& frame_t, const RgbImage& frame_t_minus_tau,
                     const Box& last_box, const Histogram& target_hist,
                     const PipelineConfig& cfg) {
  const TargetSize target{
      static_cast<std::size_t>(std::max(1.0, std::round(last_box.w))),
      static_cast<std::size_t>(std::max(1.0, std::round(last_box.h)))};

  SearchRegion region = crop_search_region(frame_t, last_box, cfg.search_scale);
  if (region.area.w < static_cast<double>(target.w) ||
      region.area.h < static_cast<double>(target.h)) {
    region.area = {0.0, 0.0, static_cast<double>(frame_t.cols()),
                   static_cast<double>(frame_t.rows())};
    region.image = frame_t;
  }
  if (region.area.w < static_cast<double>(target.w) ||
      region.area.h < static_cast<double>(target.h)) {
    throw std::invalid_argument("redetect: frame is smaller than the target");
  }
  const auto row0 = static_cast<std::size_t>(region.area.y);
  const auto col0 = static_cast<std::size_t>(region.area.x);
  const auto rows = region.image.rows();
  const auto cols = region.image.cols();
  const RgbImage previous = crop(frame_t_minus_tau, row0, col0, rows, cols);

  const ChannelSet channels = build_channels(region.image, previous);
  SignatureOptions opts;
  opts.blur_sigma = cfg.blur_sigma > 0.0 ? cfg.blur_sigma : default_blur_sigma(rows, cols);
  opts.sign_mode = cfg.sign_mode;

  Redetection out;
  out.region = region.area;

  auto build_prior = [&](const SaliencyMap& s, std::vector<Box>& boxes,
                         std::vector<double>& weights) {
    boxes = top_m_regions(s, target, cfg.regions);
    weights.clear();
    for (const Box& b : boxes) {
      const double d = hist_distance(target_hist, grayscale_histogram(channels.i1, b));
      weights.push_back(prior_weight(d, cfg.xi, cfg.prior_mode));
    }
    return assemble_prior_map(rows, cols, boxes, weights);
  };

  const SaliencyMap initial = image_signature_saliency(channels.i1, opts.blur_sigma);
  PriorMap prior = build_prior(initial, out.candidates, out.weights);

  PriorRefresher refresher;
  if (cfg.refresh_prior_each_iteration) {
    refresher = [&](const SaliencyMap& current) {
      return build_prior(current, out.candidates, out.weights);
    };
  }
  AggregationResult as =
      aggregation_signature_saliency(channels, prior, cfg.iterations, opts, refresher);
  if (cfg.refresh_prior_each_iteration && cfg.iterations > 0) {
    prior = build_prior(as.map, out.candidates, out.weights);
  }

  const Pixel peak = argmax(hadamard(prior.values, as.map.values));
  out.coarse_center = {static_cast<double>(peak.col + col0), static_cast<double>(peak.row + row0)};
  out.saliency = std::move(as.map);
  out.prior = std::move(prior);
  return out;
}

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::kNormal:
      return "normal";
    case EventKind::kDriftDetected:
      return "drift_detected";
    case EventKind::kRedetected:
      return "redetected";
  }
  return "normal";
}

std::optional<EventKind> parse_event_kind(std::string_view text) noexcept {
  if (text == "normal") return EventKind::kNormal;
  if (text == "drift_detected") return EventKind::kDriftDetected;
  if (text == "redetected") return EventKind::kRedetected;
  return std::nullopt;
}

std::vector<TrackEvent> track_sequence(std::span<const RgbImage> frames, const Box& init_box,
                                       const PipelineConfig& cfg) {
  if (frames.empty()) throw std::invalid_argument("track_sequence: empty sequence");
  if (cfg.tau < 0) throw std::invalid_argument("track_sequence: tau must be >= 0");

  TrackerState state = tracker_init(frames[0], init_box, cfg.kcf);
  const Histogram initial_hist = grayscale_histogram(intensity(frames[0]), init_box);
  Histogram target_hist = initial_hist;
  ResponseStats stats;

  std::vector<TrackEvent> events;
  events.reserve(frames.size());

  const Detection first = tracker_detect(state, frames[0]);
  stats.add(first.response);
  events.push_back({1, EventKind::kNormal, init_box, first.response, std::nullopt});

  for (std::size_t i = 1; i < frames.size(); ++i) {
    const RgbImage& frame = frames[i];
    const std::size_t frame_index = i + 1;

    Detection det = tracker_detect(state, frame);
    TrackEvent event{frame_index, EventKind::kNormal, det.box, det.response, std::nullopt};

    const bool drift = cfg.ast_enabled && frame_index > kWarmupFrames &&
                       drift_detected(stats, det.response, cfg.drift_threshold, cfg.drift_mode);
    if (!drift) {
      stats.add(det.response);
    } else if (!cfg.relocate_on_drift) {
      event.kind = EventKind::kDriftDetected;
    } else {
      const auto tau = static_cast<std::size_t>(cfg.tau);
      const RgbImage& previous = i >= tau ? frames[i - tau] : frame;
      const Redetection found = redetect(frame, previous, state.box, target_hist, cfg);

      TrackerState moved = state;
      moved.box = clamp_box(box_centred_on(found.coarse_center, state.box.w, state.box.h),
                            frame.rows(), frame.cols());
      det = tracker_detect(moved, frame);
      event.kind = EventKind::kRedetected;
      event.box = det.box;
      event.response = det.response;
      event.coarse_center = found.coarse_center;
    }

    state = tracker_update(state, frame, event.box);
    target_hist = update_target_histogram(grayscale_histogram(intensity(frame), event.box),
                                          initial_hist, cfg.hist_sigma);
    events.push_back(event);
  }
  return events;
}

}  // namespace aggsig
