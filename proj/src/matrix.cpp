#include "aggsig/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace aggsig {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if ((rows == 0) != (cols == 0)) {
    throw std::invalid_argument("Matrix: rows and cols must both be zero or both positive");
  }
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw std::invalid_argument("Matrix: data length " + std::to_string(data_.size()) +
                                " does not match " + std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
  if ((rows == 0) != (cols == 0)) {
    throw std::invalid_argument("Matrix: rows and cols must both be zero or both positive");
  }
  if (!all_finite()) {
    throw std::invalid_argument("Matrix: non-finite entry");
  }
}

double Matrix::sum() const noexcept {
  double s = 0.0;
  for (double v : data_) s += v;
  return s;
}

double Matrix::min() const noexcept {
  return data_.empty() ? 0.0 : *std::min_element(data_.begin(), data_.end());
}

double Matrix::max() const noexcept {
  return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end());
}

double Matrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::norm() const noexcept {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_shape(*this, other, "Matrix::operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_shape(*this, other, "Matrix::operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) noexcept {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }
Matrix operator-(Matrix a) { return a *= -1.0; }

Matrix hadamard(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "hadamard");
  Matrix out = a;
  auto o = out.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] *= bd[i];
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  auto ad = a.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < ad.size(); ++i) m = std::max(m, std::abs(ad[i] - bd[i]));
  return m;
}

Matrix submatrix(const Matrix& m, std::size_t row0, std::size_t col0, std::size_t rows,
                 std::size_t cols) {
  if (row0 + rows > m.rows() || col0 + cols > m.cols()) {
    throw std::invalid_argument("submatrix: window exceeds matrix bounds");
  }
  Matrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto src = m.row(row0 + r).subspan(col0, cols);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

void require_non_empty(const Matrix& m, const char* what) {
  if (m.empty()) throw std::invalid_argument(std::string(what) + ": empty matrix");
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(std::string(what) + ": shape mismatch " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
  }
}

Pixel argmax(const Matrix& m) {
  require_non_empty(m, "argmax");
  auto d = m.data();
  std::size_t best = 0;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (d[i] > d[best]) best = i;
  }
  return {best / m.cols(), best % m.cols()};
}

RgbImage crop(const RgbImage& img, std::size_t row0, std::size_t col0, std::size_t rows,
              std::size_t cols) {
  return {submatrix(img.r, row0, col0, rows, cols), submatrix(img.g, row0, col0, rows, cols),
          submatrix(img.b, row0, col0, rows, cols)};
}

Matrix intensity(const RgbImage& img) {
  if (!img.consistent()) throw std::invalid_argument("intensity: colour planes differ in shape");
  Matrix out(img.rows(), img.cols());
  auto o = out.data();
  auto r = img.r.data();
  auto g = img.g.data();
  auto b = img.b.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = (r[i] + g[i] + b[i]) / 3.0;
  return out;
}

}  // namespace aggsig
