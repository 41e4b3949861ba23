#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace aggsig {

// Dense row-major grid of doubles. A default-constructed Matrix is empty
// (0x0); every kernel rejects empty input.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }
  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

  bool same_shape(const Matrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  double sum() const noexcept;
  double min() const noexcept;
  double max() const noexcept;
  double max_abs() const noexcept;
  // Frobenius norm.
  double norm() const noexcept;
  bool all_finite() const noexcept;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s) noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator-(Matrix a);

Matrix hadamard(const Matrix& a, const Matrix& b);
double max_abs_diff(const Matrix& a, const Matrix& b);

// Copies the [row0, row0+rows) x [col0, col0+cols) window; the window must be
// inside the matrix.
Matrix submatrix(const Matrix& m, std::size_t row0, std::size_t col0, std::size_t rows,
                 std::size_t cols);

// Throws std::invalid_argument when `m` is empty.
void require_non_empty(const Matrix& m, const char* what);
// Throws std::invalid_argument when shapes differ.
void require_same_shape(const Matrix& a, const Matrix& b, const char* what);

struct Pixel {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const Pixel&, const Pixel&) = default;
};

// Position of the largest entry; ties resolve to the first in row-major order.
Pixel argmax(const Matrix& m);

// Three co-registered colour planes with samples in [0,1].
struct RgbImage {
  Matrix r, g, b;

  std::size_t rows() const noexcept { return r.rows(); }
  std::size_t cols() const noexcept { return r.cols(); }
  bool empty() const noexcept { return r.empty(); }
  bool consistent() const noexcept { return r.same_shape(g) && r.same_shape(b); }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

RgbImage crop(const RgbImage& img, std::size_t row0, std::size_t col0, std::size_t rows,
              std::size_t cols);

// (R+G+B)/3.
Matrix intensity(const RgbImage& img);

}  // namespace aggsig
