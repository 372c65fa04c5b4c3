#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ein/neutralization.hpp"

using ein::cplx;
using ein::Matrix2c;
using ein::MatrixXc;

namespace {

MatrixXc hadamard2() {
  MatrixXc h(2, 2);
  h << cplx(1), cplx(1), cplx(1), cplx(-1);
  return h;
}

}  // namespace

TEST_CASE("gamma keeps relay power at the node budget") {
  CHECK(ein::gamma_factor(0.0) == 0.0);
  CHECK(ein::gamma_factor(1.0) == doctest::Approx(std::sqrt(1.0 / 3.0)));
  // Relay output power gamma^2 * (2p + 1) equals p exactly under
  // unit-modulus fading.
  for (const double p : {0.1, 1.0, 10.0, 1e4}) {
    const double g = ein::gamma_factor(p);
    CHECK(g * g * (2.0 * p + 1.0) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK_THROWS_AS(ein::gamma_factor(-1.0), std::invalid_argument);
}

TEST_CASE("relay gains align the pair phase from the cell center") {
  const auto gains = ein::relay_gain_matrix(hadamard2(), 1.0);
  REQUIRE(gains.pairs() == 1);
  // det = -2, so the alignment factor is conj(-2)/2 = -1.
  CHECK(std::abs(gains.unit_factors()[0] - cplx(-1.0)) < 1e-15);
  const auto d = gains.diagonal();
  const double g = ein::gamma_factor(1.0);
  CHECK(std::abs(d(0) - cplx(-g)) < 1e-15);
  CHECK(std::abs(d(1) - cplx(g)) < 1e-15);
  const MatrixXc m = gains.matrix();
  CHECK(m.rows() == 2);
  CHECK(std::abs(m(0, 1)) == 0.0);
}

TEST_CASE("singular cell centers raise DegenerateCell") {
  MatrixXc q(2, 2);
  q << cplx(1), cplx(1), cplx(1), cplx(1);
  CHECK_THROWS_AS(ein::relay_gain_matrix(q, 1.0), ein::DegenerateCell);
  // A clearly invertible block after a singular one still fails as a whole.
  MatrixXc tall(4, 2);
  tall << cplx(1), cplx(1), cplx(1), cplx(1),
      cplx(1), cplx(1), cplx(1), cplx(-1);
  CHECK_THROWS_AS(ein::relay_gain_matrix(tall, 1.0), ein::DegenerateCell);
}

TEST_CASE("effective channel is diagonal at the perfect match") {
  const MatrixXc h = hadamard2();
  const auto gains = ein::relay_gain_matrix(h, 1.0);
  const Matrix2c eff = ein::effective_channel(ein::f_map(h, 1), gains, h);
  const double g = ein::gamma_factor(1.0);
  CHECK(std::abs(eff(0, 0) - cplx(2.0 * g)) < 1e-14);
  CHECK(std::abs(eff(1, 1) - cplx(-2.0 * g)) < 1e-14);
  CHECK(std::abs(eff(0, 1)) < 1e-15);
  CHECK(std::abs(eff(1, 0)) < 1e-15);
}

TEST_CASE("asymptotic SINR on a hand-checked channel") {
  // h = [[1,1],[1,-1]]: |det| = 2, column norms 2, gamma^2 = 1/3 at p=1,
  // so SINR = (4/3) / (1 + 2/3) = 0.8 for both destinations.
  const MatrixXc h = hadamard2();
  CHECK(ein::asymptotic_sinr(h, 1.0, 1) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(ein::asymptotic_sinr(h, 1.0, 2) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK_THROWS_AS(ein::asymptotic_sinr(h, 1.0, 3), std::invalid_argument);
  CHECK(ein::asymptotic_sinr(h, 0.0, 1) == 0.0);
}

TEST_CASE("exact SINR agrees with the ideal one at zero mismatch") {
  const auto model = ein::FadingModel::rayleigh();
  ein::RngStream s(44, 0);
  for (const int pairs : {1, 2, 3}) {
    for (int rep = 0; rep < 20; ++rep) {
      const MatrixXc h = ein::sample_matrix(model, 2 * pairs, 2, s);
      double det_sum = 0.0;
      for (int m = 0; m < pairs; ++m)
        det_sum += std::abs(ein::det2(Matrix2c(h.block<2, 2>(2 * m, 0))));
      if (det_sum < 1e-3) continue;
      const auto sp = ein::sinr_exact(h, ein::f_map(h, pairs), 2.0);
      const double a1 = ein::asymptotic_sinr(h, 2.0, 1);
      const double a2 = ein::asymptotic_sinr(h, 2.0, 2);
      CHECK(sp.sinr1 == doctest::Approx(a1).epsilon(1e-12));
      CHECK(sp.sinr2 == doctest::Approx(a2).epsilon(1e-12));
    }
  }
}

TEST_CASE("exact SINR on the hand-checked channel") {
  const MatrixXc h = hadamard2();
  const auto sp = ein::sinr_exact(h, ein::f_map(h, 1), 1.0);
  CHECK(sp.sinr1 == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(sp.sinr2 == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("second-hop mismatch slashes the exact SINR") {
  const MatrixXc h = hadamard2();
  MatrixXc g = ein::f_map(h, 1);
  g(0, 1) += cplx(0.0, 0.5);  // cross-term leakage toward destination 1
  const auto sp = ein::sinr_exact(h, g, 1.0, h);
  CHECK(sp.sinr1 < 0.8);
}

TEST_CASE("shape and argument validation in the SINR paths") {
  const MatrixXc h = hadamard2();
  MatrixXc wide(2, 3);
  wide.setZero();
  CHECK_THROWS_AS(ein::sinr_exact(h, wide, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ein::sinr_exact(h, ein::f_map(h, 1), -1.0),
                  std::invalid_argument);
  MatrixXc row(1, 2);
  row.setZero();
  CHECK_THROWS_AS(ein::asymptotic_sinr(row, 1.0, 1), std::invalid_argument);
}

TEST_CASE("block simulation is reproducible and self-consistent") {
  const auto model = ein::FadingModel::uniform_phase();
  const ein::QuantizerSpec spec = ein::PhaseSpec{8};
  const auto a = ein::simulate_block(model, 2, 10.0, 2000, spec, 7);
  const auto b = ein::simulate_block(model, 2, 10.0, 2000, spec, 7);
  CHECK(a.rate1 == b.rate1);
  CHECK(a.rate2 == b.rate2);
  CHECK(a.per_user_matched_mean == b.per_user_matched_mean);
  CHECK(a.pairs_used == b.pairs_used);

  CHECK(a.pairs_used > 0);
  CHECK(a.matched_fraction > 0.0);
  CHECK(a.matched_fraction <= 1.0);
  CHECK(a.per_user_matched_mean > 0.0);
  // Throughput view = conditional view scaled by the matched fraction.
  CHECK(a.rate1 ==
        doctest::Approx(a.matched_rate1 * a.matched_fraction).epsilon(1e-12));
  CHECK(a.rate2 ==
        doctest::Approx(a.matched_rate2 * a.matched_fraction).epsilon(1e-12));
  CHECK(a.per_user_matched_mean ==
        doctest::Approx((a.matched_rate1 + a.matched_rate2) / 2.0)
            .epsilon(1e-12));

  const auto c = ein::simulate_block(model, 2, 10.0, 2000, spec, 8);
  CHECK(a.rate1 != c.rate1);
}

TEST_CASE("probing cell corners can only lower the reported rate") {
  const auto model = ein::FadingModel::uniform_phase();
  const ein::QuantizerSpec spec = ein::PhaseSpec{8};
  ein::BlockOptions probe;
  probe.min_over_cell = true;
  probe.corner_probes = 4;
  const auto plain = ein::simulate_block(model, 2, 10.0, 2000, spec, 7);
  const auto probed = ein::simulate_block(model, 2, 10.0, 2000, spec, 7, probe);
  CHECK(probed.per_user_matched_mean <= plain.per_user_matched_mean);
  CHECK(probed.pairs_used == plain.pairs_used);
}

TEST_CASE("degenerate centers are excluded and counted") {
  // A 1-bin phase quantizer has the all-ones center, whose pair block is
  // singular: every matched pair must be skipped as degenerate.
  const auto model = ein::FadingModel::uniform_phase();
  const ein::QuantizerSpec spec = ein::PhaseSpec{1};
  const auto res = ein::simulate_block(model, 2, 10.0, 500, spec, 7);
  CHECK(res.pairs_used == 0);
  CHECK(res.pairs_degenerate == 500);
  CHECK(res.matched_fraction == 0.0);
  CHECK(res.rate1 == 0.0);
}

TEST_CASE("simulate_block validates its arguments") {
  const auto model = ein::FadingModel::uniform_phase();
  const ein::QuantizerSpec spec = ein::PhaseSpec{4};
  CHECK_THROWS_AS(ein::simulate_block(model, 1, 1.0, 100, spec, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(ein::simulate_block(model, 2, 1.0, 0, spec, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(ein::simulate_block(model, 2, -1.0, 100, spec, 1),
                  std::invalid_argument);
}

TEST_CASE("an odd relay is left out of the pairing") {
  const auto model = ein::FadingModel::uniform_phase();
  const ein::QuantizerSpec spec = ein::PhaseSpec{4};
  // 5 relays use 2 pairs; results must match a 4-relay run only in shape,
  // not in randomness, so just check the invariants hold.
  const auto res = ein::simulate_block(model, 5, 1.0, 500, spec, 7);
  CHECK(res.pairs_used + res.pairs_degenerate <= 500);
  CHECK(res.matched_fraction <= 1.0);
}
