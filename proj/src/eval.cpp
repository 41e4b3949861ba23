#include "aggsig/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace aggsig {

double mae(const SaliencyMap& s, const Matrix& gt) {
  require_non_empty(s.values, "mae");
  require_same_shape(s.values, gt, "mae");
  double total = 0.0;
  auto a = s.values.data();
  auto b = gt.data();
  for (std::size_t i = 0; i < a.size(); ++i) total += std::abs(a[i] - b[i]);
  return total / static_cast<double>(a.size());
}

std::vector<Pixel> mask_positives(const Matrix& mask) {
  std::vector<Pixel> out;
  for (std::size_t r = 0; r < mask.rows(); ++r) {
    for (std::size_t c = 0; c < mask.cols(); ++c) {
      if (mask(r, c) > 0.5) out.push_back({r, c});
    }
  }
  return out;
}

double nss(const SaliencyMap& s, std::span<const Pixel> positives) {
  const Matrix& m = s.values;
  require_non_empty(m, "nss");
  if (positives.empty()) return 0.0;
  const double n = static_cast<double>(m.size());
  const double mean = m.sum() / n;
  double var = 0.0;
  for (double v : m.data()) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / n);
  if (sd <= 1e-12 * std::max(1.0, std::abs(mean))) return 0.0;
  double total = 0.0;
  for (const Pixel& p : positives) {
    if (p.row >= m.rows() || p.col >= m.cols()) {
      throw std::invalid_argument("nss: positive pixel outside the map");
    }
    total += (m(p.row, p.col) - mean) / sd;
  }
  return total / static_cast<double>(positives.size());
}

double sim(const SaliencyMap& p, const SaliencyMap& q) {
  require_non_empty(p.values, "sim");
  require_same_shape(p.values, q.values, "sim");
  const double sp = p.values.sum();
  const double sq = q.values.sum();
  if (sp <= 0.0 || sq <= 0.0) return 0.0;
  double total = 0.0;
  auto a = p.values.data();
  auto b = q.values.data();
  for (std::size_t i = 0; i < a.size(); ++i) total += std::min(a[i] / sp, b[i] / sq);
  return std::min(1.0, total);
}

double iou(const Box& a, const Box& b) {
  if (a == b) return a.area() > 0.0 ? 1.0 : 0.0;
  const double ix = std::max(0.0, std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x));
  const double iy = std::max(0.0, std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y));
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

double centre_distance(const Box& a, const Box& b) {
  return std::hypot(a.cx() - b.cx(), a.cy() - b.cy());
}

namespace {

void require_pairs(std::span<const Box> pred, std::span<const Box> gt, const char* what) {
  if (pred.size() != gt.size()) {
    throw std::invalid_argument(std::string(what) + ": prediction/ground-truth length mismatch");
  }
  if (pred.empty()) throw std::invalid_argument(std::string(what) + ": no frames");
}

}  // namespace

CurveReport precision_curve(std::span<const Box> pred, std::span<const Box> gt) {
  require_pairs(pred, gt, "precision_curve");
  std::vector<double> errors;
  errors.reserve(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) errors.push_back(centre_distance(pred[i], gt[i]));

  CurveReport report;
  for (int t = 0; t <= 50; ++t) {
    const auto hits = std::count_if(errors.begin(), errors.end(),
                                    [t](double e) { return e <= static_cast<double>(t); });
    report.thresholds.push_back(static_cast<double>(t));
    report.values.push_back(static_cast<double>(hits) / static_cast<double>(errors.size()));
  }
  report.summary = report.values[20];
  return report;
}

CurveReport success_curve(std::span<const Box> pred, std::span<const Box> gt) {
  require_pairs(pred, gt, "success_curve");
  std::vector<double> overlaps;
  overlaps.reserve(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) overlaps.push_back(iou(pred[i], gt[i]));

  CurveReport report;
  for (int k = 0; k <= 20; ++k) {
    const double t = static_cast<double>(k) / 20.0;
    const auto hits =
        std::count_if(overlaps.begin(), overlaps.end(), [t](double o) { return o >= t; });
    report.thresholds.push_back(t);
    report.values.push_back(static_cast<double>(hits) / static_cast<double>(overlaps.size()));
  }
  double auc = 0.0;
  for (std::size_t k = 0; k + 1 < report.values.size(); ++k) {
    auc += 0.5 * (report.values[k] + report.values[k + 1]) *
           (report.thresholds[k + 1] - report.thresholds[k]);
  }
  report.summary = auc;
  return report;
}

CurveReport average_curves(std::span<const CurveReport> curves) {
  if (curves.empty()) throw std::invalid_argument("average_curves: no curves");
  CurveReport out;
  out.thresholds = curves.front().thresholds;
  out.values.assign(out.thresholds.size(), 0.0);
  const double n = static_cast<double>(curves.size());
  for (const CurveReport& c : curves) {
    if (c.thresholds != out.thresholds) {
      throw std::invalid_argument("average_curves: threshold grids differ");
    }
    for (std::size_t i = 0; i < c.values.size(); ++i) out.values[i] += c.values[i];
    out.summary += c.summary;
  }
  for (double& v : out.values) v /= n;
  out.summary /= n;
  return out;
}

OpeReport ope_run(std::span<const SequenceData> dataset, const PipelineConfig& cfg) {
  if (dataset.empty()) throw std::invalid_argument("ope_run: empty dataset");
  std::vector<const SequenceData*> order;
  for (const SequenceData& s : dataset) order.push_back(&s);
  std::sort(order.begin(), order.end(),
            [](const SequenceData* a, const SequenceData* b) { return a->name < b->name; });

  OpeReport report;
  std::vector<CurveReport> precisions;
  std::vector<CurveReport> successes;
  std::size_t total_frames = 0;
  double total_seconds = 0.0;

  for (const SequenceData* seq : order) {
    if (seq->frames.empty() || seq->ground_truth.size() != seq->frames.size()) {
      throw std::invalid_argument("ope_run: sequence '" + seq->name +
                                  "' needs one ground-truth box per frame");
    }
    const auto start = std::chrono::steady_clock::now();
    std::vector<TrackEvent> events = track_sequence(seq->frames, seq->ground_truth.front(), cfg);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::vector<Box> predicted;
    predicted.reserve(events.size());
    for (const TrackEvent& e : events) predicted.push_back(e.box);

    SequenceReport sr;
    sr.name = seq->name;
    sr.frames = seq->frames.size();
    sr.precision = precision_curve(predicted, seq->ground_truth);
    sr.success = success_curve(predicted, seq->ground_truth);
    sr.fps = seconds > 0.0 ? static_cast<double>(sr.frames) / seconds : 0.0;
    sr.events = std::move(events);

    precisions.push_back(sr.precision);
    successes.push_back(sr.success);
    total_frames += sr.frames;
    total_seconds += seconds;
    report.sequences.push_back(std::move(sr));
  }
  report.precision = average_curves(precisions);
  report.success = average_curves(successes);
  report.fps = total_seconds > 0.0 ? static_cast<double>(total_frames) / total_seconds : 0.0;
  return report;
}

}  // namespace aggsig
