#include "aggsig/saliency.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aggsig/filter.hpp"
#include "aggsig/spectral.hpp"

namespace aggsig {
namespace {

// Coefficients at or below this fraction of the peak magnitude count as zero in sign().
constexpr double kRoundoffFloor = 1e-12;

void flush_roundoff(Matrix& spectrum) {
  const double floor = kRoundoffFloor * spectrum.max_abs();
  for (double& v : spectrum.data()) {
    if (std::abs(v) <= floor) v = 0.0;
  }
}

void flush_roundoff(QuaternionImage& spectrum) {
  const Matrix mod = qmodulus_sq(spectrum);
  const double floor = kRoundoffFloor * kRoundoffFloor * mod.max();
  for (std::size_t r = 0; r < spectrum.rows(); ++r) {
    for (std::size_t c = 0; c < spectrum.cols(); ++c) {
      if (mod(r, c) <= floor) spectrum.set(r, c, {});
    }
  }
}

double resolve_sigma(const SignatureOptions& opts, std::size_t rows, std::size_t cols) {
  return opts.blur_sigma > 0.0 ? opts.blur_sigma : default_blur_sigma(rows, cols);
}

void require_channels(const ChannelSet& ch, const char* what) {
  require_non_empty(ch.i1, what);
  require_same_shape(ch.i1, ch.i2, what);
  require_same_shape(ch.i1, ch.i3, what);
  if (!ch.s.empty()) require_same_shape(ch.i1, ch.s, what);
}

QuaternionImage assemble(const ChannelSet& ch, const Matrix& s, const PriorMap& prior) {
  return {hadamard(prior.values, s), ch.i1, ch.i2, ch.i3};
}

SaliencyMap signature_pass(const QuaternionImage& x, double sigma, QuaternionSignMode mode) {
  QuaternionImage spectrum = qdct(x);
  flush_roundoff(spectrum);
  const QuaternionImage recon = iqdct(qsign(spectrum, mode));
  return {normalize_minmax(gaussian_blur(qmodulus_sq(recon), sigma))};
}

}  // namespace

ChannelSet build_channels(const RgbImage& frame_t, const RgbImage& frame_t_minus_tau) {
  if (frame_t.empty() || !frame_t.consistent() || !frame_t_minus_tau.consistent()) {
    throw std::invalid_argument("build_channels: empty frame or inconsistent colour planes");
  }
  require_same_shape(frame_t.r, frame_t_minus_tau.r, "build_channels");

  ChannelSet ch;
  ch.i1 = intensity(frame_t);
  ch.i2 = Matrix(frame_t.rows(), frame_t.cols());
  auto r = frame_t.r.data();
  auto g = frame_t.g.data();
  auto b = frame_t.b.data();
  auto i2 = ch.i2.data();
  for (std::size_t i = 0; i < i2.size(); ++i) i2[i] = std::max({r[i], g[i], b[i]});

  const Matrix previous = intensity(frame_t_minus_tau);
  ch.i3 = Matrix(frame_t.rows(), frame_t.cols());
  auto cur = ch.i1.data();
  auto prev = previous.data();
  auto i3 = ch.i3.data();
  for (std::size_t i = 0; i < i3.size(); ++i) i3[i] = std::abs(cur[i] - prev[i]) / 3.0;
  return ch;
}

double default_blur_sigma(std::size_t rows, std::size_t cols) {
  return 0.04 * static_cast<double>(std::max(rows, cols));
}

SaliencyMap image_signature_saliency(const Matrix& gray, double blur_sigma) {
  require_non_empty(gray, "image_signature_saliency");
  Matrix spectrum = dct2(gray);
  flush_roundoff(spectrum);
  const Matrix recon = idct2(sign_elementwise(spectrum));
  return {normalize_minmax(gaussian_blur(hadamard(recon, recon), blur_sigma))};
}

SaliencyMap qdct_signature_saliency(const ChannelSet& ch, const PriorMap& prior,
                                    const SignatureOptions& opts) {
  require_channels(ch, "qdct_signature_saliency");
  require_same_shape(ch.i1, prior.values, "qdct_signature_saliency");
  const Matrix s = ch.s.empty() ? Matrix(ch.rows(), ch.cols()) : ch.s;
  return signature_pass(assemble(ch, s, prior), resolve_sigma(opts, ch.rows(), ch.cols()),
                        opts.sign_mode);
}

AggregationResult aggregation_signature_saliency(const ChannelSet& ch, const PriorMap& prior,
                                                 int iterations, const SignatureOptions& opts,
                                                 const PriorRefresher& refresh) {
  if (iterations < 0) {
    throw std::invalid_argument("aggregation_signature_saliency: iteration count must be >= 0");
  }
  require_channels(ch, "aggregation_signature_saliency");
  require_same_shape(ch.i1, prior.values, "aggregation_signature_saliency");
  const double sigma = resolve_sigma(opts, ch.rows(), ch.cols());

  AggregationResult result;
  result.trajectory.reserve(static_cast<std::size_t>(iterations) + 1);
  result.trajectory.push_back(image_signature_saliency(ch.i1, sigma));

  PriorMap weights = prior;
  for (int i = 0; i < iterations; ++i) {
    const SaliencyMap& current = result.trajectory.back();
    if (refresh) {
      weights = refresh(current);
      require_same_shape(ch.i1, weights.values, "aggregation_signature_saliency: refreshed prior");
    }
    result.trajectory.push_back(
        signature_pass(assemble(ch, current.values, weights), sigma, opts.sign_mode));
  }
  result.map = result.trajectory.back();
  return result;
}

}  // namespace aggsig
