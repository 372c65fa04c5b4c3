#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ein/gaps.hpp"
#include "ein/rates.hpp"

using ein::FadingModel;

TEST_CASE("closed-form gap at unit power and its large-power limit") {
  CHECK(ein::gap_closed_uniform(1.0) ==
        doctest::Approx(1.8668885352522555).epsilon(1e-12));
  CHECK(ein::gap_closed_uniform(1e6) ==
        doctest::Approx(3.9971153313858769).epsilon(1e-12));
}

TEST_CASE("closed-form gap grows with power and stays under four bits") {
  double prev = -1.0;
  for (double e = -3.0; e <= 6.0; e += 0.25) {
    const double gap = ein::gap_closed_uniform(std::pow(10.0, e));
    CHECK(gap > prev);
    CHECK(gap <= 4.0);
    prev = gap;
  }
}

TEST_CASE("amplitude gap bound collapses to a constant for unit modulus") {
  // With all four amplitudes pinned at 1 the integrand is deterministic:
  // 2*log2(2.25*sqrt(2)) + 2 = 4*log2(3) - 1.
  const auto est =
      ein::gap_bound_amplitude_mc(FadingModel::uniform_phase(), 2000, 3);
  CHECK(est.mean == doctest::Approx(5.3398500028846247).epsilon(1e-9));
  CHECK(est.std_error == doctest::Approx(0.0));
}

TEST_CASE("amplitude gap bound under rayleigh fading sits near 4.7") {
  const auto est =
      ein::gap_bound_amplitude_mc(FadingModel::rayleigh(), 200000, 3);
  CHECK(est.mean == doctest::Approx(4.7).epsilon(0.022));
  CHECK(est.std_error > 0.0);
  CHECK(est.std_error < 0.02);
}

TEST_CASE("concentration penalty edge cases") {
  CHECK(ein::concentration_penalty(0.0, 4.0, 1.27, 2.0, 0.1) == 0.0);
  CHECK(ein::concentration_penalty(1.0, 4.0, 1.27, 2.0, 0.1) > 0.0);
  CHECK_THROWS_AS(ein::concentration_penalty(-1.0, 4.0, 1.27, 2.0, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(ein::concentration_penalty(1.0, 0.5, 1.27, 2.0, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(ein::concentration_penalty(1.0, 4.0, 1.27, 2.0, 1.3),
                  std::invalid_argument);
  CHECK_THROWS_AS(ein::concentration_penalty(1.0, 4.0, 1.27, 1.0, 0.1),
                  std::invalid_argument);
}

TEST_CASE("doubled concentration penalty approaches its frozen limit value") {
  // c follows the large-system coupling c = p^2 / (1 + p*(2m + 2)); at
  // m = 1e8 the doubled penalty is within 1e-4 of its limit
  // 4*log2(mean / (mean - eps)).
  const double mean = 4.0 / M_PI, eps = 0.1, p = 1.0;
  const double m = 1e8;
  const double c = p * p / (1.0 + p * (2.0 * m + 2.0));
  const double twice = 2.0 * ein::concentration_penalty(c, m, mean, 2.0, eps);
  CHECK(twice == doctest::Approx(0.4721292057853989).epsilon(1e-9));
  const double limit = 4.0 * std::log2(mean / (mean - eps));
  CHECK(std::abs(twice - limit) < 2e-4);
}

TEST_CASE("penalty shrinks as the relay count grows") {
  const double mean = 4.0 / M_PI, eps = 0.1, p = 1.0;
  double prev = 1e9;
  for (const double m : {1e2, 1e4, 1e6}) {
    const double c = p * p / (1.0 + p * (2.0 * m + 2.0));
    const double d = ein::concentration_penalty(c, m, mean, 2.0, eps);
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("large-system gap limits") {
  CHECK(ein::gap_limit_uniform() ==
        doctest::Approx(2.6059845178892752).epsilon(1e-12));
  CHECK(ein::gap_limit_amplitude(1.0) == doctest::Approx(4.0));
  CHECK(ein::gap_limit_amplitude(2.0) == doctest::Approx(0.0));
  CHECK(ein::gap_limit_amplitude(3.0 * M_PI / 8.0) ==
        doctest::Approx(3.0541654792261001).epsilon(1e-12));
  // The unit-modulus law has E|det| = 4/pi, where the amplitude limit lands
  // on the unit-modulus one.
  CHECK(ein::gap_limit_amplitude(4.0 / M_PI) ==
        doctest::Approx(ein::gap_limit_uniform()).epsilon(1e-12));
  CHECK_THROWS_AS(ein::gap_limit_amplitude(0.0), std::domain_error);
  CHECK_THROWS_AS(ein::gap_limit_amplitude(2.1), std::domain_error);
}

TEST_CASE("pair-block determinant moments against their frozen means") {
  const auto uni =
      ein::expected_abs_det_mc(FadingModel::uniform_phase(), 200000, 17);
  CHECK(std::abs(uni.mean - 4.0 / M_PI) <= 3.0 * uni.std_error);
  const auto ray = ein::expected_abs_det_mc(FadingModel::rayleigh(), 200000, 17);
  CHECK(std::abs(ray.mean - 3.0 * M_PI / 8.0) <= 3.0 * ray.std_error);
  for (const auto& model :
       {FadingModel::uniform_phase(), FadingModel::rayleigh()}) {
    const auto sq = ein::expected_abs_det_sq_mc(model, 200000, 17);
    CHECK(std::abs(sq.mean - 2.0) <= 3.0 * sq.std_error);
  }
}

TEST_CASE("deterministic block source pins the determinant estimator") {
  const auto est = ein::expected_abs_det_mc(
      [](ein::RngStream&) { return ein::Matrix2c::Identity().eval(); }, 1000,
      1);
  CHECK(est.mean == doctest::Approx(1.0));
  CHECK(est.std_error == doctest::Approx(0.0));
}

TEST_CASE("gap report sweep labels bounds by relay count and model") {
  const auto uni = ein::gap_vs_relays(FadingModel::uniform_phase(), 10.0,
                                      {2, 4}, 20000, 7);
  REQUIRE(uni.size() == 2);
  CHECK(uni[0].kind == ein::BoundKind::pair_closed);
  CHECK(uni[0].bound == doctest::Approx(4.0));
  CHECK(uni[0].bound_se == 0.0);
  CHECK(uni[1].kind == ein::BoundKind::limit_uniform);
  CHECK(uni[1].bound == doctest::Approx(ein::gap_limit_uniform()));

  const auto ray =
      ein::gap_vs_relays(FadingModel::rayleigh(), 10.0, {2, 6}, 20000, 7);
  CHECK(ray[0].kind == ein::BoundKind::pair_amplitude);
  CHECK(ray[0].bound_se > 0.0);
  CHECK(ray[1].kind == ein::BoundKind::limit_amplitude);
  CHECK(ray[1].bound_se > 0.0);
  CHECK(ray[1].bound == doctest::Approx(3.054).epsilon(0.02));

  for (const auto& rep : {uni[0], uni[1], ray[0], ray[1]}) {
    CHECK(rep.gap.mean > 0.0);
    CHECK(rep.gap.std_error > 0.0);
  }
  CHECK_THROWS_AS(ein::gap_vs_relays(FadingModel::rayleigh(), 1.0, {}, 100, 1),
                  std::invalid_argument);
}

TEST_CASE("MC gap at two uniform-phase relays tracks the closed form") {
  const auto reps = ein::gap_vs_relays(FadingModel::uniform_phase(), 1.0, {2},
                                       100000, 23);
  CHECK(std::abs(reps[0].gap.mean - ein::gap_closed_uniform(1.0)) <=
        3.0 * reps[0].gap.std_error);
}
