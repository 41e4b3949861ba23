#pragma once

#include <span>
#include <string>
#include <vector>

#include "aggsig/box.hpp"
#include "aggsig/matrix.hpp"
#include "aggsig/pipeline.hpp"
#include "aggsig/saliency.hpp"

namespace aggsig {

// Mean |s - gt| over all pixels.
double mae(const SaliencyMap& s, const Matrix& gt);

// Mean z-scored saliency (population std) at the given pixels; 0 when the map
// is flat or the set is empty.
double nss(const SaliencyMap& s, std::span<const Pixel> positives);
std::vector<Pixel> mask_positives(const Matrix& mask);

// Histogram intersection of the two maps after normalizing each to sum 1.
double sim(const SaliencyMap& p, const SaliencyMap& q);

double iou(const Box& a, const Box& b);
double centre_distance(const Box& a, const Box& b);

struct CurveReport {
  std::vector<double> thresholds;
  std::vector<double> values;
  double summary = 0.0;
};

// Fraction of frames with centre error <= t, t = 0..50 px; summary at 20 px.
CurveReport precision_curve(std::span<const Box> pred, std::span<const Box> gt);
// Fraction of frames with IoU >= t, t = 0, 0.05, ..., 1; summary is the
// trapezoidal area under the curve.
CurveReport success_curve(std::span<const Box> pred, std::span<const Box> gt);

// Pointwise mean of curves sharing one threshold grid.
CurveReport average_curves(std::span<const CurveReport> curves);

struct SequenceData {
  std::string name;
  std::vector<RgbImage> frames;
  std::vector<Box> ground_truth;
};

struct SequenceReport {
  std::string name;
  std::size_t frames = 0;
  CurveReport precision;
  CurveReport success;
  double fps = 0.0;
  std::vector<TrackEvent> events;
};

struct OpeReport {
  std::vector<SequenceReport> sequences;  // sorted by name
  CurveReport precision;                  // mean of per-sequence curves
  CurveReport success;
  double fps = 0.0;  // total frames / total tracking time
};

// One-pass evaluation: each sequence starts from its first ground-truth box
// and is tracked once.
OpeReport ope_run(std::span<const SequenceData> dataset, const PipelineConfig& cfg);

}  // namespace aggsig
