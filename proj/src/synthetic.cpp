#include "aggsig/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace aggsig {
namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Smooth multi-sinusoid texture with a few soft low-contrast patches.
RgbImage make_background(std::size_t rows, std::size_t cols, Rng& rng) {
  RgbImage img{Matrix(rows, cols), Matrix(rows, cols), Matrix(rows, cols)};
  const double base[3] = {uniform(rng, 0.35, 0.55), uniform(rng, 0.35, 0.55),
                          uniform(rng, 0.35, 0.55)};

  struct Wave {
    double fx, fy, phase, amp;
  };
  std::vector<Wave> waves;
  for (int k = 0; k < 4; ++k) {
    waves.push_back({uniform(rng, 0.5, 3.0) / static_cast<double>(cols),
                     uniform(rng, 0.5, 3.0) / static_cast<double>(rows),
                     uniform(rng, 0.0, 2.0 * std::numbers::pi), uniform(rng, 0.02, 0.06)});
  }

  struct Patch {
    double x0, y0, x1, y1, delta;
  };
  std::vector<Patch> patches;
  for (int k = 0; k < 6; ++k) {
    const double pw = uniform(rng, 0.1, 0.3) * static_cast<double>(cols);
    const double ph = uniform(rng, 0.1, 0.3) * static_cast<double>(rows);
    const double x0 = uniform(rng, 0.0, static_cast<double>(cols) - pw);
    const double y0 = uniform(rng, 0.0, static_cast<double>(rows) - ph);
    patches.push_back({x0, y0, x0 + pw, y0 + ph, uniform(rng, -0.08, 0.08)});
  }

  Matrix* planes[3] = {&img.r, &img.g, &img.b};
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      double v = 0.0;
      for (const auto& w : waves) {
        v += w.amp * std::sin(2.0 * std::numbers::pi *
                                  (w.fx * static_cast<double>(c) + w.fy * static_cast<double>(r)) +
                              w.phase);
      }
      for (const auto& p : patches) {
        const double x = static_cast<double>(c);
        const double y = static_cast<double>(r);
        if (x >= p.x0 && x < p.x1 && y >= p.y0 && y < p.y1) v += p.delta;
      }
      for (int ch = 0; ch < 3; ++ch) (*planes[ch])(r, c) = base[ch] + v;
    }
  }
  return img;
}

void add_noise(RgbImage& img, double sigma, Rng& rng) {
  if (sigma <= 0.0) return;
  std::normal_distribution<double> noise(0.0, sigma);
  for (Matrix* plane : {&img.r, &img.g, &img.b}) {
    for (double& v : plane->data()) v += noise(rng);
  }
}

void clamp_image(RgbImage& img) {
  for (Matrix* plane : {&img.r, &img.g, &img.b}) {
    for (double& v : plane->data()) v = clamp01(v);
  }
}

struct Ellipse {
  double cx, cy, a, b;
  bool contains(double x, double y) const {
    const double dx = (x - cx) / a;
    const double dy = (y - cy) / b;
    return dx * dx + dy * dy <= 1.0;
  }
};

Matrix rasterize(const Ellipse& e, std::size_t rows, std::size_t cols, int dx, int dy) {
  Matrix mask(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (e.contains(static_cast<double>(c) - dx, static_cast<double>(r) - dy)) mask(r, c) = 1.0;
    }
  }
  return mask;
}

Box bounding_box(const Matrix& mask) {
  std::size_t r0 = mask.rows(), r1 = 0, c0 = mask.cols(), c1 = 0;
  for (std::size_t r = 0; r < mask.rows(); ++r) {
    for (std::size_t c = 0; c < mask.cols(); ++c) {
      if (mask(r, c) == 0.0) continue;
      r0 = std::min(r0, r);
      r1 = std::max(r1, r);
      c0 = std::min(c0, c);
      c1 = std::max(c1, c);
    }
  }
  if (r0 > r1) return {};
  return {static_cast<double>(c0), static_cast<double>(r0), static_cast<double>(c1 - c0 + 1),
          static_cast<double>(r1 - r0 + 1)};
}

RgbImage paint(const RgbImage& background, const Matrix& mask, const double colour[3]) {
  RgbImage out = background;
  Matrix* planes[3] = {&out.r, &out.g, &out.b};
  const Matrix* bg[3] = {&background.r, &background.g, &background.b};
  for (std::size_t r = 0; r < mask.rows(); ++r) {
    for (std::size_t c = 0; c < mask.cols(); ++c) {
      if (mask(r, c) == 0.0) continue;
      for (int ch = 0; ch < 3; ++ch) {
        // Keep the background's noise so only the mean level changes.
        (*planes[ch])(r, c) = clamp01(colour[ch] + ((*bg[ch])(r, c) - 0.45) * 0.3);
      }
    }
  }
  return out;
}

}  // namespace

SparseScene synth_sparse_scene(const SparseSceneParams& params) {
  if (!(params.fg_area_fraction > 0.0) || params.fg_area_fraction > 0.01) {
    throw std::invalid_argument("synth_sparse_scene: foreground fraction must lie in (0, 0.01]");
  }
  if (params.width < 16 || params.height < 16) {
    throw std::invalid_argument("synth_sparse_scene: frame must be at least 16x16");
  }
  Rng rng(params.seed);
  const std::size_t rows = params.height;
  const std::size_t cols = params.width;
  const auto budget = static_cast<double>(rows * cols) * params.fg_area_fraction;

  SparseScene scene;
  scene.background = make_background(rows, cols, rng);
  add_noise(scene.background, params.noise_level, rng);
  clamp_image(scene.background);

  const double area = budget * uniform(rng, 0.6, 0.95);
  const double aspect = uniform(rng, 0.7, 1.4);
  double a = std::sqrt(area / (std::numbers::pi * aspect));
  double b = a * aspect;
  const double margin = std::max(a, b) + 6.0;
  Ellipse e{uniform(rng, margin, static_cast<double>(cols) - margin),
            uniform(rng, margin, static_cast<double>(rows) - margin), a, b};
  do {
    scene.shift_x = static_cast<int>(std::uniform_int_distribution<int>(-3, 3)(rng));
    scene.shift_y = static_cast<int>(std::uniform_int_distribution<int>(-3, 3)(rng));
  } while (scene.shift_x == 0 && scene.shift_y == 0);

  scene.mask = rasterize(e, rows, cols, 0, 0);
  while (scene.mask.sum() > std::floor(budget)) {
    e.a *= 0.95;
    e.b *= 0.95;
    scene.mask = rasterize(e, rows, cols, 0, 0);
  }
  if (scene.mask.sum() == 0.0) {
    throw std::invalid_argument("synth_sparse_scene: foreground budget too small to rasterize");
  }
  scene.fg_box = bounding_box(scene.mask);

  const double brighter = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
  double colour[3];
  const Matrix* bg[3] = {&scene.background.r, &scene.background.g, &scene.background.b};
  for (int ch = 0; ch < 3; ++ch) {
    colour[ch] = clamp01(bg[ch]->sum() / static_cast<double>(rows * cols) +
                         brighter * params.contrast * uniform(rng, 0.8, 1.2));
  }
  scene.first = paint(scene.background, scene.mask, colour);
  scene.second = paint(scene.background,
                       rasterize(e, rows, cols, scene.shift_x, scene.shift_y), colour);
  return scene;
}

JumpSequence synth_jump_sequence(const JumpSequenceParams& params) {
  const double size = static_cast<double>(params.target_size);
  if (params.frames == 0 || params.target_size < 4) {
    throw std::invalid_argument("synth_jump_sequence: need >= 1 frame and target size >= 4");
  }
  if (static_cast<double>(params.width) < 10.0 * size ||
      static_cast<double>(params.height) < 10.0 * size) {
    throw std::invalid_argument("synth_jump_sequence: frame must be at least 10x the target");
  }
  Rng rng(params.seed);
  const std::size_t rows = params.height;
  const std::size_t cols = params.width;
  const RgbImage background = make_background(rows, cols, rng);

  const auto t = params.target_size;
  Matrix texture(t, t);
  const double fx = uniform(rng, 1.0, 2.5);
  const double fy = uniform(rng, 1.0, 2.5);
  for (std::size_t r = 0; r < t; ++r) {
    for (std::size_t c = 0; c < t; ++c) {
      texture(r, c) = 0.08 * std::sin(fx * static_cast<double>(c)) *
                          std::cos(fy * static_cast<double>(r)) +
                      uniform(rng, -0.04, 0.04);
    }
  }

  const double sx = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
  const double sy = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
  const double vx = sx * uniform(rng, 0.25, 1.0) * params.drift_speed;
  const double vy = sy * uniform(rng, 0.25, 1.0) * params.drift_speed;
  const double jump = uniform(rng, 1.75, 1.8) * size;
  const double start_cx = static_cast<double>(cols) / 2.0 - sx * uniform(rng, 0.0, 2.0 * size);
  const double start_cy = static_cast<double>(rows) / 2.0 - sy * uniform(rng, 0.0, 2.0 * size);

  auto centre_at = [&](std::size_t frame) {
    const double k = static_cast<double>(frame - 1);
    double cx = start_cx + vx * k;
    double cy = start_cy + vy * k;
    if (frame >= params.jump_frame) {
      cx += sx * jump;
      cy += sy * jump;
    }
    return std::pair{cx, cy};
  };

  JumpSequence seq;
  const std::size_t before_jump = params.jump_frame > 1 ? params.jump_frame - 1 : 1;
  const auto [ox, oy] = centre_at(before_jump);
  seq.distractor = {std::round(ox - sx * jump - size / 2.0), std::round(oy + sy * jump - size / 2.0),
                    size, size};

  const double target_rgb[3] = {0.92, 0.85, 0.72};
  const double distractor_rgb[3] = {0.12, 0.12, 0.16};
  for (std::size_t f = 1; f <= params.frames; ++f) {
    RgbImage frame = background;
    auto stamp = [&](const Box& box, const double rgb[3]) {
      Matrix* planes[3] = {&frame.r, &frame.g, &frame.b};
      for (std::size_t r = 0; r < t; ++r) {
        for (std::size_t c = 0; c < t; ++c) {
          const auto y = static_cast<std::ptrdiff_t>(box.y) + static_cast<std::ptrdiff_t>(r);
          const auto x = static_cast<std::ptrdiff_t>(box.x) + static_cast<std::ptrdiff_t>(c);
          if (y < 0 || x < 0 || y >= static_cast<std::ptrdiff_t>(rows) ||
              x >= static_cast<std::ptrdiff_t>(cols)) {
            continue;
          }
          for (int ch = 0; ch < 3; ++ch) {
            (*planes[ch])(static_cast<std::size_t>(y), static_cast<std::size_t>(x)) =
                rgb[ch] + texture(r, c);
          }
        }
      }
    };
    if (params.distractor) stamp(seq.distractor, distractor_rgb);
    const auto [cx, cy] = centre_at(f);
    const Box gt{std::round(cx - size / 2.0), std::round(cy - size / 2.0), size, size};
    stamp(gt, target_rgb);

    Rng frame_rng(params.seed * 7919 + (params.frozen_noise ? 0 : f));
    add_noise(frame, params.noise_level, frame_rng);
    clamp_image(frame);
    seq.frames.push_back(std::move(frame));
    seq.ground_truth.push_back(gt);
  }
  return seq;
}

}  // namespace aggsig
