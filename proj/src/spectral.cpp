#include "aggsig/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace aggsig {
namespace {

enum class PlanKind { kDct, kIdct, kForward, kInverse };

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};
template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> allocate(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

// FFTW planning is not thread-safe; execution through the new-array interface
// is. Plans are created once per (kind, shape) and never destroyed.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(PlanKind kind, std::size_t rows, std::size_t cols) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(kind, rows, cols);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    const int r = static_cast<int>(rows);
    const int c = static_cast<int>(cols);
    const unsigned flags = FFTW_ESTIMATE | FFTW_PRESERVE_INPUT;
    fftw_plan plan = nullptr;
    if (kind == PlanKind::kDct || kind == PlanKind::kIdct) {
      auto in = allocate<double>(rows * cols);
      auto out = allocate<double>(rows * cols);
      const fftw_r2r_kind k = kind == PlanKind::kDct ? FFTW_REDFT10 : FFTW_REDFT01;
      plan = fftw_plan_r2r_2d(r, c, in.get(), out.get(), k, k, flags);
    } else {
      auto in = allocate<fftw_complex>(rows * cols);
      auto out = allocate<fftw_complex>(rows * cols);
      const int sign = kind == PlanKind::kForward ? FFTW_FORWARD : FFTW_BACKWARD;
      plan = fftw_plan_dft_2d(r, c, in.get(), out.get(), sign, flags);
    }
    if (plan == nullptr) throw std::runtime_error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<PlanKind, std::size_t, std::size_t>, fftw_plan> plans_;
};

// Per-axis orthonormal scale for FFTW's REDFT10 output (which is 2x the plain
// cosine sum): sqrt(1/(4n)) for the DC term, sqrt(1/(2n)) otherwise.
std::vector<double> dct_scale(std::size_t n) {
  std::vector<double> s(n, std::sqrt(1.0 / (2.0 * static_cast<double>(n))));
  s[0] = std::sqrt(1.0 / (4.0 * static_cast<double>(n)));
  return s;
}

// Input pre-scale for REDFT01 so that it inverts the orthonormal DCT-II.
std::vector<double> idct_scale(std::size_t n) {
  std::vector<double> s(n, std::sqrt(1.0 / (2.0 * static_cast<double>(n))));
  s[0] = std::sqrt(1.0 / static_cast<double>(n));
  return s;
}

}  // namespace

Matrix dct2(const Matrix& m) {
  require_non_empty(m, "dct2");
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  fftw_plan plan = PlanCache::instance().get(PlanKind::kDct, rows, cols);

  auto in = allocate<double>(m.size());
  auto out = allocate<double>(m.size());
  std::copy(m.data().begin(), m.data().end(), in.get());
  fftw_execute_r2r(plan, in.get(), out.get());

  const auto sr = dct_scale(rows);
  const auto sc = dct_scale(cols);
  Matrix result(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) result(r, c) = out[r * cols + c] * sr[r] * sc[c];
  }
  return result;
}

Matrix idct2(const Matrix& m) {
  require_non_empty(m, "idct2");
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  fftw_plan plan = PlanCache::instance().get(PlanKind::kIdct, rows, cols);

  const auto sr = idct_scale(rows);
  const auto sc = idct_scale(cols);
  auto in = allocate<double>(m.size());
  auto out = allocate<double>(m.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) in[r * cols + c] = m(r, c) * sr[r] * sc[c];
  }
  fftw_execute_r2r(plan, in.get(), out.get());
  return Matrix(rows, cols, std::vector<double>(out.get(), out.get() + m.size()));
}

ComplexMatrix fft2(const Matrix& m) {
  require_non_empty(m, "fft2");
  const std::size_t n = m.size();
  fftw_plan plan = PlanCache::instance().get(PlanKind::kForward, m.rows(), m.cols());

  auto in = allocate<fftw_complex>(n);
  auto out = allocate<fftw_complex>(n);
  auto src = m.data();
  for (std::size_t i = 0; i < n; ++i) {
    in[i][0] = src[i];
    in[i][1] = 0.0;
  }
  fftw_execute_dft(plan, in.get(), out.get());

  ComplexMatrix result{Matrix(m.rows(), m.cols()), Matrix(m.rows(), m.cols())};
  auto re = result.re.data();
  auto im = result.im.data();
  for (std::size_t i = 0; i < n; ++i) {
    re[i] = out[i][0];
    im[i] = out[i][1];
  }
  return result;
}

Matrix ifft2(const Matrix& re, const Matrix& im) {
  require_non_empty(re, "ifft2");
  require_same_shape(re, im, "ifft2");
  const std::size_t n = re.size();
  fftw_plan plan = PlanCache::instance().get(PlanKind::kInverse, re.rows(), re.cols());

  auto in = allocate<fftw_complex>(n);
  auto out = allocate<fftw_complex>(n);
  auto rd = re.data();
  auto id = im.data();
  for (std::size_t i = 0; i < n; ++i) {
    in[i][0] = rd[i];
    in[i][1] = id[i];
  }
  fftw_execute_dft(plan, in.get(), out.get());

  Matrix result(re.rows(), re.cols());
  auto o = result.data();
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) o[i] = out[i][0] * scale;
  return result;
}

ComplexMatrix complex_multiply(const ComplexMatrix& a, const ComplexMatrix& b,
                               bool conjugate_first) {
  require_same_shape(a.re, b.re, "complex_multiply");
  require_same_shape(a.re, a.im, "complex_multiply");
  require_same_shape(b.re, b.im, "complex_multiply");
  ComplexMatrix out{Matrix(a.rows(), a.cols()), Matrix(a.rows(), a.cols())};
  const double s = conjugate_first ? -1.0 : 1.0;
  auto ar = a.re.data();
  auto ai = a.im.data();
  auto br = b.re.data();
  auto bi = b.im.data();
  auto orr = out.re.data();
  auto oi = out.im.data();
  for (std::size_t i = 0; i < orr.size(); ++i) {
    const double xr = ar[i];
    const double xi = s * ai[i];
    orr[i] = xr * br[i] - xi * bi[i];
    oi[i] = xr * bi[i] + xi * br[i];
  }
  return out;
}

}  // namespace aggsig
