#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ein/icgap.hpp"

using ein::FadingModel;
using ein::IcConfig;

namespace {

IcConfig uniform_cfg(double p) {
  IcConfig cfg;
  cfg.p = p;
  cfg.model = FadingModel::uniform_phase();
  return cfg;
}

}  // namespace

TEST_CASE("alignment rate is exact under unit-modulus fading") {
  // |h| = 1 makes every sample log2(1 + 2p)/2, so the MC mean is exact.
  const auto est = ein::rate_ia_mc(uniform_cfg(1.0), 2000, 9);
  CHECK(est.mean == doctest::Approx(0.5 * std::log2(3.0)).epsilon(1e-12));
  CHECK(est.std_error == doctest::Approx(0.0));
  const auto ten = ein::rate_ia_mc(uniform_cfg(10.0), 2000, 9);
  CHECK(ten.mean == doctest::Approx(0.5 * std::log2(21.0)).epsilon(1e-12));
}

TEST_CASE("pairwise upper bound is exact under unit-modulus fading") {
  const auto est = ein::pairwise_upper_mc(uniform_cfg(1.0), 2000, 9);
  CHECK(est.mean == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
  CHECK(est.std_error == doctest::Approx(0.0));
}

TEST_CASE("gap bound is exact under unit-modulus fading") {
  const auto est =
      ein::ia_gap_bound_mc(FadingModel::uniform_phase(), 2000, 9);
  CHECK(est.mean == doctest::Approx(0.29248125036057809).epsilon(1e-12));
}

TEST_CASE("rayleigh alignment rate matches the exponential-integral oracle") {
  // E[log2(1 + 2p|h|^2)]/2 with |h|^2 ~ Exp(1) equals
  // exp(a) E1(a) / (2 ln 2) at a = 1/(2p); values frozen from quadrature.
  IcConfig cfg;
  cfg.model = FadingModel::rayleigh();
  cfg.p = 1.0;
  const auto one = ein::rate_ia_mc(cfg, 200000, 10);
  CHECK(std::abs(one.mean - 0.6657392963339873) <= 3.0 * one.std_error);
  cfg.p = 10.0;
  const auto ten = ein::rate_ia_mc(cfg, 200000, 10);
  CHECK(std::abs(ten.mean - 1.8714858997657278) <= 3.0 * ten.std_error);
}

TEST_CASE("rayleigh gap bound lands on half log2 of six") {
  const auto est = ein::ia_gap_bound_mc(FadingModel::rayleigh(), 200000, 10);
  CHECK(std::abs(est.mean - 1.2924812503605781) <= 3.0 * est.std_error);
  CHECK(est.std_error > 0.0);
}

TEST_CASE("bound actually covers the measured gap per user") {
  IcConfig cfg;
  cfg.model = FadingModel::rayleigh();
  for (const double p : {1.0, 10.0, 100.0}) {
    cfg.p = p;
    const auto ia = ein::rate_ia_mc(cfg, 100000, 12);
    const auto upper = ein::pairwise_upper_mc(cfg, 100000, 12);
    const auto bound = ein::ia_gap_bound_mc(cfg.model, 100000, 12);
    // Per-user gap: half the pairwise sum bound minus the per-user rate.
    const double gap = upper.mean / 2.0 - ia.mean;
    const double slack =
        3.0 * std::hypot(std::hypot(ia.std_error, upper.std_error / 2.0),
                         bound.std_error);
    CHECK(gap <= bound.mean + slack);
    CHECK(gap >= 0.0);
  }
}

TEST_CASE("interference-channel inputs are validated") {
  IcConfig cfg;
  cfg.users = 1;
  CHECK_THROWS_AS(ein::rate_ia_mc(cfg, 100, 1), std::invalid_argument);
  cfg.users = 2;
  cfg.p = 0.0;
  CHECK_THROWS_AS(ein::rate_ia_mc(cfg, 100, 1), std::invalid_argument);
  cfg.p = 1.0;
  CHECK_THROWS_AS(ein::rate_ia_mc(cfg, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(ein::pairwise_upper_mc(cfg, 0, 1), std::invalid_argument);
}
