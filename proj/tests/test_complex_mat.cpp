#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ein/complex_mat.hpp"
#include "ein/fading.hpp"

using ein::cplx;
using ein::Matrix2c;
using ein::MatrixXc;

namespace {

Matrix2c sample2(ein::RngStream& s) {
  const auto model = ein::FadingModel::rayleigh();
  Matrix2c m;
  m << model.draw(s), model.draw(s), model.draw(s), model.draw(s);
  return m;
}

}  // namespace

TEST_CASE("det2 on a simple integer matrix") {
  Matrix2c m;
  m << cplx(1), cplx(2), cplx(3), cplx(4);
  CHECK(ein::det2(m) == cplx(-2.0));
}

TEST_CASE("det2 with complex entries") {
  Matrix2c m;
  m << cplx(0, 1), cplx(1, 0), cplx(1, 0), cplx(0, 1);
  // i*i - 1*1 = -2
  CHECK(ein::det2(m) == cplx(-2.0));
}

TEST_CASE("f2_map swaps the diagonal and keeps the off-diagonal") {
  Matrix2c m;
  m << cplx(1), cplx(2), cplx(3), cplx(4);
  const Matrix2c f = ein::f2_map(m);
  CHECK(f(0, 0) == cplx(4.0));
  CHECK(f(0, 1) == cplx(2.0));
  CHECK(f(1, 0) == cplx(3.0));
  CHECK(f(1, 1) == cplx(1.0));
}

TEST_CASE("f2_map is an involution") {
  ein::RngStream s(21, 0);
  for (int i = 0; i < 50; ++i) {
    const Matrix2c m = sample2(s);
    CHECK(ein::f2_map(ein::f2_map(m)) == m);
  }
}

TEST_CASE("f2_map preserves the determinant") {
  ein::RngStream s(21, 1);
  for (int i = 0; i < 50; ++i) {
    const Matrix2c m = sample2(s);
    const cplx a = ein::det2(m), b = ein::det2(ein::f2_map(m));
    CHECK(std::abs(a - b) <= 1e-15 * std::abs(a));
  }
}

TEST_CASE("f_map lays pair-block images side by side") {
  MatrixXc h(4, 2);
  h << cplx(1), cplx(2), cplx(3), cplx(4),  // block 0
      cplx(5), cplx(6), cplx(7), cplx(8);   // block 1
  const auto g = ein::f_map(h, 2);
  CHECK(g.rows() == 2);
  CHECK(g.cols() == 4);
  MatrixXc want(2, 4);
  want << cplx(4), cplx(2), cplx(8), cplx(6),
      cplx(3), cplx(1), cplx(7), cplx(5);
  CHECK(g == want);
}

TEST_CASE("f_map round-trips through its own block images") {
  ein::RngStream s(21, 2);
  const auto model = ein::FadingModel::rayleigh();
  const MatrixXc h = ein::sample_matrix(model, 6, 2, s);
  const auto g = ein::f_map(h, 3);
  for (int m = 0; m < 3; ++m) {
    const Matrix2c blk = h.block<2, 2>(2 * m, 0);
    CHECK(Matrix2c(g.block<2, 2>(0, 2 * m)) == ein::f2_map(blk));
  }
}

TEST_CASE("f_map rejects shapes that do not hold the pairs") {
  MatrixXc h(3, 2);
  h.setZero();
  CHECK_THROWS_AS(ein::f_map(h, 2), std::invalid_argument);
  MatrixXc wide(4, 3);
  wide.setZero();
  CHECK_THROWS_AS(ein::f_map(wide, 2), std::invalid_argument);
  MatrixXc ok(4, 2);
  ok.setZero();
  CHECK_THROWS_AS(ein::f_map(ok, 0), std::invalid_argument);
}
