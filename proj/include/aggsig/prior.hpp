#pragma once

#include <array>
#include <span>
#include <vector>

#include "aggsig/box.hpp"
#include "aggsig/matrix.hpp"
#include "aggsig/prior_map.hpp"
#include "aggsig/saliency.hpp"

namespace aggsig {

// 256-bin grey-level histogram over [0,1], normalized to sum 1.
struct Histogram {
  std::array<double, 256> bins{};

  double sum() const noexcept;
  friend bool operator==(const Histogram&, const Histogram&) = default;
};

struct TargetSize {
  std::size_t w = 0;
  std::size_t h = 0;
};

// Greedy non-maximum suppression over the saliency map: up to `count` boxes
// of `size`, each centred on the strongest remaining pixel and clamped into
// the image. After each pick every pixel within max(w,h)/2 (Chebyshev) of it
// is suppressed. Ties resolve in row-major order.
std::vector<Box> top_m_regions(const SaliencyMap& s, TargetSize size, int count);

// The box is clipped to the image and must overlap it.
Histogram grayscale_histogram(const Matrix& gray, const Box& box);

// Sum of |H(i) - y(i)| over bins 1..255; bin 0 is left out.
double hist_distance(const Histogram& target, const Histogram& candidate);

enum class PriorMode {
  kPaper,            // exp(-(1-d)/(2 xi^2)) / (sqrt(2 pi) xi), grows with d
  kSimilarityDecay,  // exp(-d^2 / (2 xi^2)), decays with d
};

double prior_weight(double distance, double xi, PriorMode mode = PriorMode::kPaper);

// Each box is filled with its weight (overlaps take the larger); every other
// pixel is exactly 1.
PriorMap assemble_prior_map(std::size_t rows, std::size_t cols, std::span<const Box> boxes,
                            std::span<const double> weights);

// sigma * current + (1 - sigma) * initial, bin by bin.
Histogram update_target_histogram(const Histogram& current, const Histogram& initial,
                                  double sigma);

}  // namespace aggsig
