#include <cmath>
#include <random>
#include <stdexcept>

#include "aggsig/quaternion.hpp"
#include "aggsig/spectral.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aggsig;

namespace {

Quaternion random_quaternion(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  return {d(rng), d(rng), d(rng), d(rng)};
}

double energy(const QuaternionImage& x) { return qmodulus_sq(x).sum(); }

}  // namespace

TEST_CASE("qmul basis table") {
  const Quaternion j{0, 1, 0, 0}, k{0, 0, 1, 0}, h{0, 0, 0, 1};
  CHECK(qmul(j, k) == h);
  CHECK(qmul(k, h) == j);
  CHECK(qmul(h, j) == k);
  CHECK(qmul(k, j) == Quaternion{0, 0, 0, -1});
  CHECK(qmul(j, j) == Quaternion{-1, 0, 0, 0});
  const Quaternion q{1, 1, 1, 1};
  CHECK(qmul(q, q.conj()) == Quaternion{4, 0, 0, 0});
}

TEST_CASE("qmul modulus is multiplicative") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const Quaternion p = random_quaternion(rng), q = random_quaternion(rng);
    CHECK(qmul(p, q).norm() == doctest::Approx(p.norm() * q.norm()).epsilon(1e-12));
    const Quaternion cq = qmul(q.conj(), q);
    CHECK(cq.r == doctest::Approx(q.norm_sq()).epsilon(1e-12));
    CHECK(std::abs(cq.qj) + std::abs(cq.qk) + std::abs(cq.qh) < 1e-12);
  }
}

TEST_CASE("qdct matches the per-pixel axis multiplication") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const QuaternionImage x = oracle::random_qimage(8, 8, seed * 4);
    CHECK(oracle::qimage_diff(qdct(x), oracle::qdct(x)) < 1e-10);
  }
}

TEST_CASE("qdct special inputs") {
  const auto zero = QuaternionImage::zeros(5, 4);
  const auto z = qdct(zero);
  CHECK(oracle::qimage_diff(z, zero) == 0.0);

  const Matrix s = oracle::random_matrix(6, 6, 21);
  QuaternionImage only_real = QuaternionImage::zeros(6, 6);
  only_real.re = s;
  const QuaternionImage out = qdct(only_real);
  const Matrix expected = dct2(s) * (1.0 / std::sqrt(3.0));
  CHECK(out.re.max_abs() < 1e-14);
  CHECK(max_abs_diff(out.pj, expected) < 1e-12);
  CHECK(max_abs_diff(out.pk, expected) < 1e-12);
  CHECK(max_abs_diff(out.ph, expected) < 1e-12);

  QuaternionImage bad = QuaternionImage::zeros(3, 3);
  bad.pk = Matrix(3, 4);
  CHECK_THROWS_AS(qdct(bad), std::invalid_argument);
  CHECK_THROWS_AS(iqdct(bad), std::invalid_argument);
}

TEST_CASE("iqdct inverts qdct") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const QuaternionImage x = oracle::random_qimage(7, 9, 100 + seed * 4);
    CHECK(oracle::qimage_diff(iqdct(qdct(x)), x) < 1e-10);
    CHECK(oracle::qimage_diff(qdct(iqdct(x)), x) < 1e-10);
  }
  const auto zero = QuaternionImage::zeros(4, 4);
  CHECK(oracle::qimage_diff(iqdct(zero), zero) == 0.0);
}

TEST_CASE("iqdct of a DC coefficient") {
  auto spec = QuaternionImage::zeros(4, 4);
  spec.re(0, 0) = 2.0;
  const QuaternionImage out = iqdct(spec);
  // idct of a DC of 2 on 4x4 is the constant 0.5; then multiply by -mu.
  const double s = 1.0 / std::sqrt(3.0);
  const Quaternion expected = qmul(Quaternion{0, -s, -s, -s}, Quaternion{0.5, 0, 0, 0});
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      const Quaternion q = out.at(r, c);
      CHECK(q.r == doctest::Approx(expected.r).epsilon(1e-12));
      CHECK(q.qj == doctest::Approx(expected.qj).epsilon(1e-12));
      CHECK(q.qk == doctest::Approx(expected.qk).epsilon(1e-12));
      CHECK(q.qh == doctest::Approx(expected.qh).epsilon(1e-12));
    }
  }
}

TEST_CASE("qdct linearity and energy") {
  const QuaternionImage a = oracle::random_qimage(8, 8, 300);
  const QuaternionImage b = oracle::random_qimage(8, 8, 400);
  const double p = 1.3, q = -0.6;
  const QuaternionImage mix{p * a.re + q * b.re, p * a.pj + q * b.pj, p * a.pk + q * b.pk,
                            p * a.ph + q * b.ph};
  const QuaternionImage fa = qdct(a), fb = qdct(b), fm = qdct(mix);
  const QuaternionImage combined{p * fa.re + q * fb.re, p * fa.pj + q * fb.pj,
                                 p * fa.pk + q * fb.pk, p * fa.ph + q * fb.ph};
  CHECK(oracle::qimage_diff(fm, combined) < 1e-10);
  CHECK(energy(fa) == doctest::Approx(energy(a)).epsilon(1e-9));
}

TEST_CASE("qsign polar") {
  QuaternionImage x = QuaternionImage::zeros(1, 3);
  x.set(0, 0, {1, 1, 1, 1});
  x.set(0, 2, {0, 0, -3, 0});
  const QuaternionImage s = qsign(x);
  CHECK(s.at(0, 0) == Quaternion{0.5, 0.5, 0.5, 0.5});
  CHECK(s.at(0, 1) == Quaternion{0, 0, 0, 0});
  CHECK(s.at(0, 2) == Quaternion{0, 0, -1, 0});

  const QuaternionImage r = qsign(oracle::random_qimage(6, 6, 500));
  const Matrix mod = qmodulus_sq(r);
  for (double v : mod.data()) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(oracle::qimage_diff(qsign(r), r) < 1e-12);
}

TEST_CASE("qsign per component") {
  QuaternionImage x = QuaternionImage::zeros(1, 1);
  x.set(0, 0, {2.0, -0.1, 0.0, 5.0});
  CHECK(qsign(x, QuaternionSignMode::kPerComponent).at(0, 0) == Quaternion{1, -1, 0, 1});
}

TEST_CASE("qmodulus_sq") {
  QuaternionImage x = QuaternionImage::zeros(2, 2);
  x.set(1, 0, {1, 1, 1, 1});
  const Matrix m = qmodulus_sq(x);
  CHECK(m(1, 0) == 4.0);
  CHECK(m(0, 0) == 0.0);

  const QuaternionImage y = oracle::random_qimage(5, 5, 600);
  const Matrix my = qmodulus_sq(y);
  for (std::size_t r = 0; r < 5; ++r) {
    for (std::size_t c = 0; c < 5; ++c) {
      const Quaternion q = y.at(r, c);
      CHECK(my(r, c) == doctest::Approx(qmul(q, q.conj()).r).epsilon(1e-12));
    }
  }
}
