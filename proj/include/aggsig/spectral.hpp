#pragma once

#include "aggsig/matrix.hpp"

namespace aggsig {

// Orthonormal separable 2-D DCT-II; idct2 is its exact inverse (DCT-III with
// the matching scale), so dct2 preserves the Frobenius norm.
Matrix dct2(const Matrix& m);
Matrix idct2(const Matrix& m);

struct ComplexMatrix {
  Matrix re;
  Matrix im;

  std::size_t rows() const noexcept { return re.rows(); }
  std::size_t cols() const noexcept { return re.cols(); }
};

// Unnormalized forward DFT; the inverse carries the 1/(rows*cols) factor and
// returns only the real part.
ComplexMatrix fft2(const Matrix& m);
Matrix ifft2(const Matrix& re, const Matrix& im);
inline Matrix ifft2(const ComplexMatrix& spectrum) { return ifft2(spectrum.re, spectrum.im); }

// Pointwise a * b, or conj(a) * b when `conjugate_first` is set.
ComplexMatrix complex_multiply(const ComplexMatrix& a, const ComplexMatrix& b,
                               bool conjugate_first = false);

}  // namespace aggsig
