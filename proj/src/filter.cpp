#include "aggsig/filter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace aggsig {
namespace {

// Index into [0, n) under period-2n symmetric reflection.
std::size_t reflect(std::ptrdiff_t i, std::size_t n) {
  const auto period = static_cast<std::ptrdiff_t>(2 * n);
  std::ptrdiff_t m = i % period;
  if (m < 0) m += period;
  return static_cast<std::size_t>(m < static_cast<std::ptrdiff_t>(n) ? m : period - 1 - m);
}

}  // namespace

Matrix sign_elementwise(const Matrix& m) {
  Matrix out = m;
  for (double& v : out.data()) v = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
  return out;
}

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("gaussian_kernel: sigma must be positive");
  }
  const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
  std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
  double total = 0.0;
  for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
    const double v = std::exp(-0.5 * static_cast<double>(k * k) / (sigma * sigma));
    taps[static_cast<std::size_t>(k + radius)] = v;
    total += v;
  }
  for (double& t : taps) t /= total;
  return taps;
}

Matrix gaussian_blur(const Matrix& m, double sigma) {
  require_non_empty(m, "gaussian_blur");
  const auto taps = gaussian_kernel(sigma);
  const auto radius = static_cast<std::ptrdiff_t>(taps.size() / 2);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();

  Matrix horizontal(rows, cols);
  std::vector<double> padded(cols + 2 * static_cast<std::size_t>(radius));
  std::vector<std::size_t> source(padded.size());
  for (std::size_t i = 0; i < padded.size(); ++i) {
    source[i] = reflect(static_cast<std::ptrdiff_t>(i) - radius, cols);
  }
  for (std::size_t r = 0; r < rows; ++r) {
    auto src = m.row(r);
    auto dst = horizontal.row(r);
    for (std::size_t i = 0; i < padded.size(); ++i) padded[i] = src[source[i]];
    for (std::size_t k = 0; k < taps.size(); ++k) {
      const double w = taps[k];
      const double* p = padded.data() + k;
      for (std::size_t c = 0; c < cols; ++c) dst[c] += w * p[c];
    }
  }

  Matrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto dst = out.row(r);
    for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
      const double w = taps[static_cast<std::size_t>(k + radius)];
      auto src = horizontal.row(reflect(static_cast<std::ptrdiff_t>(r) + k, rows));
      for (std::size_t c = 0; c < cols; ++c) dst[c] += w * src[c];
    }
  }
  return out;
}

Matrix normalize_minmax(const Matrix& m) {
  require_non_empty(m, "normalize_minmax");
  const double lo = m.min();
  const double hi = m.max();
  const double scale = std::max(std::abs(lo), std::abs(hi));
  Matrix out(m.rows(), m.cols());
  if (hi - lo <= 1e-12 * scale || hi == lo) {
    const double level = hi > 0.0 ? 1.0 : 0.0;
    for (double& v : out.data()) v = level;
    return out;
  }
  auto src = m.data();
  auto dst = out.data();
  const double span = hi - lo;
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = (src[i] - lo) / span;
  return out;
}

}  // namespace aggsig
