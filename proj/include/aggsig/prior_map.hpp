#pragma once

#include "aggsig/matrix.hpp"

namespace aggsig {

// Per-pixel target-likeness weights, strictly positive; 1 means "no prior".
struct PriorMap {
  Matrix values;

  static PriorMap uniform(std::size_t rows, std::size_t cols) { return {Matrix(rows, cols, 1.0)}; }
};

}  // namespace aggsig
