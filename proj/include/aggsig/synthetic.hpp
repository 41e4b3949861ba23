#pragma once

#include <cstdint>
#include <vector>

#include "aggsig/box.hpp"
#include "aggsig/matrix.hpp"

namespace aggsig {

struct SparseSceneParams {
  std::size_t width = 128;
  std::size_t height = 128;
  double fg_area_fraction = 0.01;  // in (0, 0.01]
  double contrast = 0.08;
  double noise_level = 0.03;
  std::uint64_t seed = 0;
};

// A single small foreground blob over a textured background. `second` is
// `first` with the blob displaced by a few pixels; the background (noise
// included) is identical in both frames.
struct SparseScene {
  RgbImage first;
  RgbImage second;
  RgbImage background;
  Matrix mask;  // 1 on the foreground of `first`, 0 elsewhere
  Box fg_box;   // tight bounding box of `mask`
  int shift_x = 0;
  int shift_y = 0;
};

// Deterministic in `params.seed`. Throws std::invalid_argument for a
// foreground fraction outside (0, 0.01] or a frame too small to hold it.
SparseScene synth_sparse_scene(const SparseSceneParams& params);

struct JumpSequenceParams {
  std::size_t width = 240;
  std::size_t height = 180;
  std::size_t frames = 40;
  std::size_t jump_frame = 20;  // 1-based; the teleport lands on this frame
  std::size_t target_size = 14;
  double noise_level = 0.01;
  double drift_speed = 0.0;   // px/frame per axis before and after the jump
  bool frozen_noise = true;   // one noise field for all frames
  bool distractor = false;
  std::uint64_t seed = 0;
};

// A textured bright target over a static background. It drifts at up to
// `drift_speed` and teleports diagonally (1.75-1.8x its size along each
// axis) on `jump_frame`.
// With `distractor`, a dark static square of the same size sits mirrored
// across the jump from the landing point.
struct JumpSequence {
  std::vector<RgbImage> frames;
  std::vector<Box> ground_truth;
  Box distractor;
};

JumpSequence synth_jump_sequence(const JumpSequenceParams& params);

}  // namespace aggsig
