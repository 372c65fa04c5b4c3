#pragma once

#include <Eigen/Dense>

#include <cassert>
#include <complex>
#include <stdexcept>

namespace ein {

using cplx = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using MatrixXc = Eigen::MatrixXcd;

// Hop conventions: a first-hop matrix is (#relays) x 2 (sources to relays),
// a second-hop matrix is 2 x (#relays) (relays to destinations). Relays are
// grouped into vertical 2x2 blocks of the first hop; with L relays there are
// floor(L/2) usable pairs and any leftover row is ignored.
using FirstHopMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, 2>;
using SecondHopMatrix = Eigen::Matrix<cplx, 2, Eigen::Dynamic>;

/// One relay pair's channels: h into the pair, g out of it.
struct PairBlock {
  Matrix2c h;
  Matrix2c g;
};

/// Determinant of a 2x2 block, written out to stay expression-friendly.
template <typename Derived>
typename Derived::Scalar det2(const Eigen::MatrixBase<Derived>& m) {
  assert(m.rows() == 2 && m.cols() == 2);
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

/// Anti-transpose of a 2x2 block: swaps the diagonal, keeps the
/// off-diagonal. Involutive and determinant-preserving. This is the pattern
/// a relay pair's outgoing channels must follow for the pair's interference
/// contributions to cancel.
template <typename Derived>
Matrix2c f2_map(const Eigen::MatrixBase<Derived>& a) {
  assert(a.rows() == 2 && a.cols() == 2);
  Matrix2c r;
  r << a(1, 1), a(0, 1), a(1, 0), a(0, 0);
  return r;
}

/// Block-wise f2_map: maps a first-hop matrix (rows >= 2*pairs, 2 columns)
/// to the matched second-hop matrix (2 x 2*pairs). Rows beyond 2*pairs are
/// ignored. Throws std::invalid_argument on shape mismatch.
template <typename Derived>
SecondHopMatrix f_map(const Eigen::MatrixBase<Derived>& h, int pairs) {
  if (pairs < 1) throw std::invalid_argument("f_map: pairs must be >= 1");
  if (h.cols() != 2 || h.rows() < 2 * pairs)
    throw std::invalid_argument("f_map: need a (>= 2*pairs) x 2 matrix");
  SecondHopMatrix out(2, 2 * pairs);
  for (int m = 0; m < pairs; ++m)
    out.template block<2, 2>(0, 2 * m) =
        f2_map(h.template block<2, 2>(2 * m, 0));
  return out;
}

}  // namespace ein
