#include "aggsig/quaternion.hpp"

#include <stdexcept>
#include <string>

#include "aggsig/filter.hpp"
#include "aggsig/spectral.hpp"

namespace aggsig {
namespace {

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

}  // namespace

void QuaternionImage::validate(const char* what) const {
  if (re.empty()) throw std::invalid_argument(std::string(what) + ": empty quaternion image");
  if (!re.same_shape(pj) || !re.same_shape(pk) || !re.same_shape(ph)) {
    throw std::invalid_argument(std::string(what) + ": quaternion planes differ in shape");
  }
}

QuaternionImage QuaternionImage::zeros(std::size_t rows, std::size_t cols) {
  return {Matrix(rows, cols), Matrix(rows, cols), Matrix(rows, cols), Matrix(rows, cols)};
}

QuaternionImage qdct(const QuaternionImage& x) {
  x.validate("qdct");
  const std::size_t n = x.re.size();
  Matrix real_part(x.rows(), x.cols());
  Matrix j_part(x.rows(), x.cols());
  Matrix k_part(x.rows(), x.cols());
  Matrix h_part(x.rows(), x.cols());

  auto a = x.re.data();
  auto i1 = x.pj.data();
  auto i2 = x.pk.data();
  auto i3 = x.ph.data();
  auto o0 = real_part.data();
  auto o1 = j_part.data();
  auto o2 = k_part.data();
  auto o3 = h_part.data();
  for (std::size_t i = 0; i < n; ++i) {
    o0[i] = -i1[i] - i2[i] - i3[i];
    o1[i] = i3[i] + a[i] - i2[i];
    o2[i] = i1[i] + a[i] - i3[i];
    o3[i] = i2[i] + a[i] - i1[i];
  }
  return {dct2(real_part) * kInvSqrt3, dct2(j_part) * kInvSqrt3, dct2(k_part) * kInvSqrt3,
          dct2(h_part) * kInvSqrt3};
}

QuaternionImage iqdct(const QuaternionImage& spectrum) {
  spectrum.validate("iqdct");
  const Matrix a = idct2(spectrum.re);
  const Matrix b = idct2(spectrum.pj);
  const Matrix c = idct2(spectrum.pk);
  const Matrix d = idct2(spectrum.ph);

  // (-mu) * (a + b j + c k + d h) with mu = (j + k + h)/sqrt(3).
  QuaternionImage out = QuaternionImage::zeros(spectrum.rows(), spectrum.cols());
  auto ad = a.data();
  auto bd = b.data();
  auto cd = c.data();
  auto dd = d.data();
  auto o0 = out.re.data();
  auto o1 = out.pj.data();
  auto o2 = out.pk.data();
  auto o3 = out.ph.data();
  for (std::size_t i = 0; i < ad.size(); ++i) {
    o0[i] = (bd[i] + cd[i] + dd[i]) * kInvSqrt3;
    o1[i] = (cd[i] - dd[i] - ad[i]) * kInvSqrt3;
    o2[i] = (dd[i] - bd[i] - ad[i]) * kInvSqrt3;
    o3[i] = (bd[i] - cd[i] - ad[i]) * kInvSqrt3;
  }
  return out;
}

QuaternionImage qsign(const QuaternionImage& x, QuaternionSignMode mode) {
  x.validate("qsign");
  if (mode == QuaternionSignMode::kPerComponent) {
    return {sign_elementwise(x.re), sign_elementwise(x.pj), sign_elementwise(x.pk),
            sign_elementwise(x.ph)};
  }
  QuaternionImage out = QuaternionImage::zeros(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) {
      const Quaternion q = x.at(r, c);
      const double n = q.norm();
      if (n == 0.0) continue;
      out.set(r, c, {q.r / n, q.qj / n, q.qk / n, q.qh / n});
    }
  }
  return out;
}

Matrix qmodulus_sq(const QuaternionImage& x) {
  x.validate("qmodulus_sq");
  Matrix out(x.rows(), x.cols());
  auto a = x.re.data();
  auto b = x.pj.data();
  auto c = x.pk.data();
  auto d = x.ph.data();
  auto o = out.data();
  for (std::size_t i = 0; i < o.size(); ++i) {
    o[i] = a[i] * a[i] + b[i] * b[i] + c[i] * c[i] + d[i] * d[i];
  }
  return out;
}

}  // namespace aggsig
