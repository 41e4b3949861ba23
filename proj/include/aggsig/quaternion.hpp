#pragma once

#include <cmath>

#include "aggsig/matrix.hpp"

namespace aggsig {

// Quaternion r + qj*j + qk*k + qh*h with j*k = h, k*h = j, h*j = k and
// j^2 = k^2 = h^2 = -1.
struct Quaternion {
  double r = 0.0;
  double qj = 0.0;
  double qk = 0.0;
  double qh = 0.0;

  double norm_sq() const noexcept { return r * r + qj * qj + qk * qk + qh * qh; }
  double norm() const noexcept { return std::sqrt(norm_sq()); }
  Quaternion conj() const noexcept { return {r, -qj, -qk, -qh}; }

  friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

// Hamilton product p*q.
constexpr Quaternion qmul(const Quaternion& p, const Quaternion& q) noexcept {
  return {
      p.r * q.r - p.qj * q.qj - p.qk * q.qk - p.qh * q.qh,
      p.r * q.qj + p.qj * q.r + p.qk * q.qh - p.qh * q.qk,
      p.r * q.qk - p.qj * q.qh + p.qk * q.r + p.qh * q.qj,
      p.r * q.qh + p.qj * q.qk - p.qk * q.qj + p.qh * q.r,
  };
}

// Four co-registered planes; pixel (r,c) is re + pj*j + pk*k + ph*h.
struct QuaternionImage {
  Matrix re, pj, pk, ph;

  std::size_t rows() const noexcept { return re.rows(); }
  std::size_t cols() const noexcept { return re.cols(); }
  // Throws std::invalid_argument for empty or mismatched planes.
  void validate(const char* what) const;

  Quaternion at(std::size_t r, std::size_t c) const noexcept {
    return {re(r, c), pj(r, c), pk(r, c), ph(r, c)};
  }
  void set(std::size_t r, std::size_t c, const Quaternion& q) noexcept {
    re(r, c) = q.r;
    pj(r, c) = q.qj;
    pk(r, c) = q.qk;
    ph(r, c) = q.qh;
  }

  static QuaternionImage zeros(std::size_t rows, std::size_t cols);
};

// Left-sided quaternion DCT about the axis (j+k+h)/sqrt(3), evaluated through
// the real decomposition
//   re = DCT(-I1 - I2 - I3)/sqrt(3)      pj = DCT(I3 + A - I2)/sqrt(3)
//   pk = DCT(I1 + A - I3)/sqrt(3)        ph = DCT(I2 + A - I1)/sqrt(3)
// where (A, I1, I2, I3) are the input's (re, pj, pk, ph) planes.
QuaternionImage qdct(const QuaternionImage& x);

// Per-plane inverse DCT followed by left multiplication with the inverse axis.
QuaternionImage iqdct(const QuaternionImage& spectrum);

enum class QuaternionSignMode {
  kPolar,         // q / |q|, zero stays zero
  kPerComponent,  // sign() applied to each of the four components
};

QuaternionImage qsign(const QuaternionImage& x, QuaternionSignMode mode = QuaternionSignMode::kPolar);

// Per-pixel q * conj(q), i.e. the squared modulus.
Matrix qmodulus_sq(const QuaternionImage& x);

}  // namespace aggsig
