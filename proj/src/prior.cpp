#include "aggsig/prior.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aggsig {

double Histogram::sum() const noexcept {
  double s = 0.0;
  for (double b : bins) s += b;
  return s;
}

std::vector<Box> top_m_regions(const SaliencyMap& s, TargetSize size, int count) {
  const Matrix& map = s.values;
  require_non_empty(map, "top_m_regions");
  if (count < 1) throw std::invalid_argument("top_m_regions: region count must be >= 1");
  if (size.w == 0 || size.h == 0 || size.w > map.cols() || size.h > map.rows()) {
    throw std::invalid_argument("top_m_regions: target size must be positive and fit the image");
  }

  std::vector<bool> suppressed(map.size(), false);
  const auto radius = static_cast<std::ptrdiff_t>(std::ceil(std::max(size.w, size.h) / 2.0));
  const auto rows = static_cast<std::ptrdiff_t>(map.rows());
  const auto cols = static_cast<std::ptrdiff_t>(map.cols());

  std::vector<Box> boxes;
  while (boxes.size() < static_cast<std::size_t>(count)) {
    std::ptrdiff_t best = -1;
    for (std::ptrdiff_t i = 0; i < rows * cols; ++i) {
      if (suppressed[static_cast<std::size_t>(i)]) continue;
      if (best < 0 || map.data()[static_cast<std::size_t>(i)] >
                          map.data()[static_cast<std::size_t>(best)]) {
        best = i;
      }
    }
    if (best < 0) break;
    const std::ptrdiff_t pr = best / cols;
    const std::ptrdiff_t pc = best % cols;

    const auto w = static_cast<std::ptrdiff_t>(size.w);
    const auto h = static_cast<std::ptrdiff_t>(size.h);
    const std::ptrdiff_t x = std::clamp<std::ptrdiff_t>(pc - w / 2, 0, cols - w);
    const std::ptrdiff_t y = std::clamp<std::ptrdiff_t>(pr - h / 2, 0, rows - h);
    boxes.push_back({static_cast<double>(x), static_cast<double>(y), static_cast<double>(w),
                     static_cast<double>(h)});

    for (std::ptrdiff_t r = std::max<std::ptrdiff_t>(0, pr - radius + 1);
         r < std::min(rows, pr + radius); ++r) {
      for (std::ptrdiff_t c = std::max<std::ptrdiff_t>(0, pc - radius + 1);
           c < std::min(cols, pc + radius); ++c) {
        suppressed[static_cast<std::size_t>(r * cols + c)] = true;
      }
    }
  }
  return boxes;
}

Histogram grayscale_histogram(const Matrix& gray, const Box& box) {
  require_non_empty(gray, "grayscale_histogram");
  const double x0 = std::max(0.0, std::floor(box.x));
  const double y0 = std::max(0.0, std::floor(box.y));
  const double x1 = std::min(static_cast<double>(gray.cols()), std::ceil(box.x + box.w));
  const double y1 = std::min(static_cast<double>(gray.rows()), std::ceil(box.y + box.h));
  if (!box.valid() || x1 <= x0 || y1 <= y0) {
    throw std::invalid_argument("grayscale_histogram: box does not overlap the image");
  }

  Histogram hist;
  std::size_t n = 0;
  for (auto r = static_cast<std::size_t>(y0); r < static_cast<std::size_t>(y1); ++r) {
    for (auto c = static_cast<std::size_t>(x0); c < static_cast<std::size_t>(x1); ++c) {
      const double v = std::clamp(gray(r, c), 0.0, 1.0);
      const auto bin = std::min<std::size_t>(255, static_cast<std::size_t>(v * 256.0));
      hist.bins[bin] += 1.0;
      ++n;
    }
  }
  for (double& b : hist.bins) b /= static_cast<double>(n);
  return hist;
}

double hist_distance(const Histogram& target, const Histogram& candidate) {
  double d = 0.0;
  for (std::size_t i = 1; i < 256; ++i) d += std::abs(target.bins[i] - candidate.bins[i]);
  return d;
}

double prior_weight(double distance, double xi, PriorMode mode) {
  if (!(xi > 0.0)) throw std::invalid_argument("prior_weight: xi must be positive");
  if (mode == PriorMode::kSimilarityDecay) {
    return std::exp(-distance * distance / (2.0 * xi * xi));
  }
  return std::exp(-(1.0 - distance) / (2.0 * xi * xi)) / (std::sqrt(2.0 * std::numbers::pi) * xi);
}

PriorMap assemble_prior_map(std::size_t rows, std::size_t cols, std::span<const Box> boxes,
                            std::span<const double> weights) {
  if (boxes.size() != weights.size()) {
    throw std::invalid_argument("assemble_prior_map: one weight per box required");
  }
  PriorMap prior = PriorMap::uniform(rows, cols);
  Matrix touched(rows, cols);
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const Box& b = boxes[i];
    if (!(weights[i] > 0.0)) throw std::invalid_argument("assemble_prior_map: weights must be > 0");
    const auto x0 = static_cast<std::size_t>(std::max(0.0, std::floor(b.x)));
    const auto y0 = static_cast<std::size_t>(std::max(0.0, std::floor(b.y)));
    const auto x1 = static_cast<std::size_t>(
        std::clamp(std::ceil(b.x + b.w), 0.0, static_cast<double>(cols)));
    const auto y1 = static_cast<std::size_t>(
        std::clamp(std::ceil(b.y + b.h), 0.0, static_cast<double>(rows)));
    for (std::size_t r = y0; r < y1; ++r) {
      for (std::size_t c = x0; c < x1; ++c) {
        if (touched(r, c) == 0.0) {
          prior.values(r, c) = weights[i];
          touched(r, c) = 1.0;
        } else {
          prior.values(r, c) = std::max(prior.values(r, c), weights[i]);
        }
      }
    }
  }
  return prior;
}

Histogram update_target_histogram(const Histogram& current, const Histogram& initial,
                                  double sigma) {
  Histogram out;
  for (std::size_t i = 0; i < 256; ++i) {
    out.bins[i] = sigma * current.bins[i] + (1.0 - sigma) * initial.bins[i];
  }
  return out;
}

}  // namespace aggsig
