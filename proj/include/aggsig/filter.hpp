#pragma once

#include <vector>

#include "aggsig/matrix.hpp"

namespace aggsig {

// Maps every entry to -1, 0 or +1.
Matrix sign_elementwise(const Matrix& m);

// Normalized 1-D Gaussian taps of radius ceil(3*sigma), centre at index radius.
std::vector<double> gaussian_kernel(double sigma);

// Separable Gaussian blur with half-sample symmetric padding
// (... c b a | a b c ... x y z | z y x ...). That padding keeps the total mass
// of the input unchanged. Throws std::invalid_argument for sigma <= 0.
Matrix gaussian_blur(const Matrix& m, double sigma);

// Min-max rescale into [0,1]. A flat matrix becomes all ones when its level is
// positive and all zeros otherwise.
Matrix normalize_minmax(const Matrix& m);

}  // namespace aggsig
