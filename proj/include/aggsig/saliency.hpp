#pragma once

#include <functional>
#include <vector>

#include "aggsig/matrix.hpp"
#include "aggsig/prior_map.hpp"
#include "aggsig/quaternion.hpp"

namespace aggsig {

// Context channels for the quaternion signature plus the evolving saliency
// channel `s` (empty until an engine fills it).
struct ChannelSet {
  Matrix i1;  // intensity (R+G+B)/3
  Matrix i2;  // max(R,G,B)
  Matrix i3;  // |i1_t - i1_{t-tau}| / 3
  Matrix s;

  std::size_t rows() const noexcept { return i1.rows(); }
  std::size_t cols() const noexcept { return i1.cols(); }
};

// Values in [0,1]; max is 1 unless the map is identically zero.
struct SaliencyMap {
  Matrix values;
};

// Pass `frame_t` twice when no frame exists at t - tau; i3 is then zero.
ChannelSet build_channels(const RgbImage& frame_t, const RgbImage& frame_t_minus_tau);

// 0.04 * max(rows, cols).
double default_blur_sigma(std::size_t rows, std::size_t cols);

// Hou-style DCT image signature: blur(x*x) with x = IDCT(sign(DCT(gray))).
SaliencyMap image_signature_saliency(const Matrix& gray, double blur_sigma);

struct SignatureOptions {
  double blur_sigma = 0.0;  // <= 0 selects default_blur_sigma
  QuaternionSignMode sign_mode = QuaternionSignMode::kPolar;
};

// One quaternion-signature pass on x = prior*S + I1 j + I2 k + I3 h. An empty
// `ch.s` is treated as zero.
SaliencyMap qdct_signature_saliency(const ChannelSet& ch, const PriorMap& prior,
                                    const SignatureOptions& opts = {});

struct AggregationResult {
  SaliencyMap map;                      // S^{R+1}
  std::vector<SaliencyMap> trajectory;  // S^1 .. S^{R+1}
};

// Recomputes the prior from the current saliency channel before an iteration.
using PriorRefresher = std::function<PriorMap(const SaliencyMap& current)>;

// S^1 is the image signature of I1; each of the `iterations` rounds feeds the
// previous map, weighted by the prior, into the real channel of the next
// quaternion signature. Without a refresher the prior is held fixed.
AggregationResult aggregation_signature_saliency(const ChannelSet& ch, const PriorMap& prior,
                                                 int iterations,
                                                 const SignatureOptions& opts = {},
                                                 const PriorRefresher& refresh = {});

}  // namespace aggsig
