#pragma once

#include "aggsig/box.hpp"
#include "aggsig/matrix.hpp"
#include "aggsig/spectral.hpp"

namespace aggsig {

struct KcfConfig {
  double padding = 2.5;              // search window = padding x target size
  double reg_lambda = 1e-4;          // ridge regularizer, > 0
  double label_sigma_factor = 0.1;   // label sigma = factor * sqrt(w*h)
  double learn_rate = 0.02;          // model interpolation factor in [0,1]
  double kernel_sigma = 0.2;         // Gaussian kernel bandwidth
};

// Kernelized correlation filter on windowed grey-level features.
struct TrackerState {
  ComplexMatrix model_alpha;  // dual coefficients, frequency domain
  Matrix model_template;      // windowed feature patch
  Box box;
  KcfConfig cfg;
  Matrix window;              // Hann window, zero on the border
  ComplexMatrix label_spectrum;
};

struct Detection {
  Box box;
  double response = 0.0;
  int dx = 0;
  int dy = 0;
};

// Throws std::invalid_argument for a degenerate box, one that misses the
// frame, or an invalid config.
TrackerState tracker_init(const RgbImage& frame, const Box& box, const KcfConfig& cfg = {});

// Correlates the model with the patch around state.box; the returned box is
// shifted to the response peak (row-major tie-break) and kept inside the frame.
Detection tracker_detect(const TrackerState& state, const RgbImage& frame);

// Full response map around state.box; the peak for an unmoved target sits at
// (rows/2, cols/2).
Matrix tracker_response(const TrackerState& state, const RgbImage& frame);

// Retrains at `box` and blends the model toward it by cfg.learn_rate.
TrackerState tracker_update(const TrackerState& state, const RgbImage& frame, const Box& box);

// Centred Gaussian regression target, peak exactly 1 at (rows/2, cols/2).
Matrix gaussian_label(std::size_t rows, std::size_t cols, double sigma);
Matrix hann_window(std::size_t rows, std::size_t cols);

// Keeps the box size and shifts it to lie inside a rows x cols frame; boxes
// larger than the frame are pinned to the origin.
Box clamp_box(const Box& box, std::size_t rows, std::size_t cols);

}  // namespace aggsig
