#include "aggsig/kcf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aggsig {
namespace {

struct PatchGeometry {
  std::size_t rows;
  std::size_t cols;
};

PatchGeometry patch_geometry(const Box& box, double padding) {
  return {std::max<std::size_t>(4, static_cast<std::size_t>(std::lround(box.h * padding))),
          std::max<std::size_t>(4, static_cast<std::size_t>(std::lround(box.w * padding)))};
}

// Windowed, zero-mean grey-level patch centred on the box, border-replicated.
Matrix extract_features(const RgbImage& frame, const Box& box, const Matrix& window) {
  const std::size_t rows = window.rows();
  const std::size_t cols = window.cols();
  const auto centre_r = static_cast<std::ptrdiff_t>(std::floor(box.cy()));
  const auto centre_c = static_cast<std::ptrdiff_t>(std::floor(box.cx()));
  const auto top = centre_r - static_cast<std::ptrdiff_t>(rows / 2);
  const auto left = centre_c - static_cast<std::ptrdiff_t>(cols / 2);
  const auto max_r = static_cast<std::ptrdiff_t>(frame.rows()) - 1;
  const auto max_c = static_cast<std::ptrdiff_t>(frame.cols()) - 1;

  Matrix patch(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto fr = static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(top + static_cast<std::ptrdiff_t>(r), 0, max_r));
    for (std::size_t c = 0; c < cols; ++c) {
      const auto fc = static_cast<std::size_t>(
          std::clamp<std::ptrdiff_t>(left + static_cast<std::ptrdiff_t>(c), 0, max_c));
      patch(r, c) = (frame.r(fr, fc) + frame.g(fr, fc) + frame.b(fr, fc)) / 3.0;
    }
  }
  const double mean = patch.sum() / static_cast<double>(patch.size());
  for (double& v : patch.data()) v -= mean;
  return hadamard(patch, window);
}

// k(x, z) for every cyclic shift, returned in the spatial domain.
Matrix gaussian_correlation(const Matrix& x, const Matrix& z, double sigma) {
  const ComplexMatrix xf = fft2(x);
  const ComplexMatrix zf = fft2(z);
  const Matrix xz = ifft2(complex_multiply(xf, zf, /*conjugate_first=*/true));
  const double xx = x.norm() * x.norm();
  const double zz = z.norm() * z.norm();
  const double n = static_cast<double>(x.size());
  Matrix k(x.rows(), x.cols());
  auto kd = k.data();
  auto c = xz.data();
  for (std::size_t i = 0; i < kd.size(); ++i) {
    kd[i] = std::exp(-std::max(0.0, (xx + zz - 2.0 * c[i]) / n) / (sigma * sigma));
  }
  return k;
}

ComplexMatrix train_alpha(const Matrix& features, const ComplexMatrix& label_spectrum,
                          const KcfConfig& cfg) {
  const ComplexMatrix kf = fft2(gaussian_correlation(features, features, cfg.kernel_sigma));
  ComplexMatrix alpha{Matrix(kf.rows(), kf.cols()), Matrix(kf.rows(), kf.cols())};
  auto kr = kf.re.data();
  auto ki = kf.im.data();
  auto yr = label_spectrum.re.data();
  auto yi = label_spectrum.im.data();
  auto ar = alpha.re.data();
  auto ai = alpha.im.data();
  for (std::size_t i = 0; i < ar.size(); ++i) {
    const double dr = kr[i] + cfg.reg_lambda;
    const double di = ki[i];
    const double den = dr * dr + di * di;
    ar[i] = (yr[i] * dr + yi[i] * di) / den;
    ai[i] = (yi[i] * dr - yr[i] * di) / den;
  }
  return alpha;
}

void validate(const RgbImage& frame, const Box& box, const KcfConfig& cfg) {
  if (frame.empty() || !frame.consistent()) {
    throw std::invalid_argument("tracker: empty frame or inconsistent colour planes");
  }
  if (!box.valid() || !std::isfinite(box.x) || !std::isfinite(box.y)) {
    throw std::invalid_argument("tracker: degenerate box");
  }
  if (!intersects_image(box, frame.rows(), frame.cols())) {
    throw std::invalid_argument("tracker: box lies outside the frame");
  }
  if (!(cfg.padding >= 1.0) || !(cfg.reg_lambda > 0.0) || !(cfg.kernel_sigma > 0.0) ||
      !(cfg.label_sigma_factor > 0.0) || !(cfg.learn_rate >= 0.0 && cfg.learn_rate <= 1.0)) {
    throw std::invalid_argument("tracker: invalid configuration");
  }
}

Matrix blend(const Matrix& old_value, const Matrix& new_value, double rate) {
  Matrix out = old_value;
  auto o = out.data();
  auto n = new_value.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = (1.0 - rate) * o[i] + rate * n[i];
  return out;
}

}  // namespace

Matrix gaussian_label(std::size_t rows, std::size_t cols, double sigma) {
  Matrix label(rows, cols);
  const auto cr = static_cast<double>(rows / 2);
  const auto cc = static_cast<double>(cols / 2);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double dr = static_cast<double>(r) - cr;
      const double dc = static_cast<double>(c) - cc;
      label(r, c) = std::exp(-0.5 * (dr * dr + dc * dc) / (sigma * sigma));
    }
  }
  return label;
}

Matrix hann_window(std::size_t rows, std::size_t cols) {
  auto hann = [](std::size_t n) {
    std::vector<double> w(n, 1.0);
    if (n < 2) return w;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                   static_cast<double>(n - 1)));
    }
    return w;
  };
  const auto wr = hann(rows);
  const auto wc = hann(cols);
  Matrix window(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) window(r, c) = wr[r] * wc[c];
  }
  return window;
}

Box clamp_box(const Box& box, std::size_t rows, std::size_t cols) {
  Box out = box;
  out.x = std::clamp(box.x, 0.0, std::max(0.0, static_cast<double>(cols) - box.w));
  out.y = std::clamp(box.y, 0.0, std::max(0.0, static_cast<double>(rows) - box.h));
  return out;
}

TrackerState tracker_init(const RgbImage& frame, const Box& box, const KcfConfig& cfg) {
  validate(frame, box, cfg);
  const PatchGeometry geom = patch_geometry(box, cfg.padding);
  TrackerState state;
  state.cfg = cfg;
  state.box = box;
  state.window = hann_window(geom.rows, geom.cols);
  state.label_spectrum =
      fft2(gaussian_label(geom.rows, geom.cols, cfg.label_sigma_factor * std::sqrt(box.w * box.h)));
  state.model_template = extract_features(frame, box, state.window);
  state.model_alpha = train_alpha(state.model_template, state.label_spectrum, cfg);
  return state;
}

Matrix tracker_response(const TrackerState& state, const RgbImage& frame) {
  validate(frame, state.box, state.cfg);
  const Matrix z = extract_features(frame, state.box, state.window);
  const ComplexMatrix kf = fft2(gaussian_correlation(state.model_template, z, state.cfg.kernel_sigma));
  return ifft2(complex_multiply(state.model_alpha, kf));
}

Detection tracker_detect(const TrackerState& state, const RgbImage& frame) {
  const Matrix response = tracker_response(state, frame);
  const Pixel peak = argmax(response);
  Detection det;
  det.dy = static_cast<int>(peak.row) - static_cast<int>(response.rows() / 2);
  det.dx = static_cast<int>(peak.col) - static_cast<int>(response.cols() / 2);
  det.response = response(peak.row, peak.col);
  Box moved = state.box;
  moved.x += det.dx;
  moved.y += det.dy;
  det.box = clamp_box(moved, frame.rows(), frame.cols());
  return det;
}

TrackerState tracker_update(const TrackerState& state, const RgbImage& frame, const Box& box) {
  validate(frame, box, state.cfg);
  TrackerState next = state;
  next.box = box;
  const Matrix features = extract_features(frame, box, state.window);
  const ComplexMatrix alpha = train_alpha(features, state.label_spectrum, state.cfg);
  const double rate = state.cfg.learn_rate;
  next.model_template = blend(state.model_template, features, rate);
  next.model_alpha.re = blend(state.model_alpha.re, alpha.re, rate);
  next.model_alpha.im = blend(state.model_alpha.im, alpha.im, rate);
  return next;
}

}  // namespace aggsig
