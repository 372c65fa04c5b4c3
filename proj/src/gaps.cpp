#include "ein/gaps.hpp"

#include <cmath>
#include <stdexcept>

#include "ein/rates.hpp"

namespace ein {

double gap_closed_uniform(double p) {
  return rate_mimo_closed_uniform(p) - rate_in_closed_uniform(p);
}

RateEstimate gap_bound_amplitude_mc(const FadingModel& model,
                                    std::size_t trials, std::uint64_t seed,
                                    int threads) {
  if (trials < 1)
    throw std::invalid_argument("gap_bound_amplitude_mc: trials must be >= 1");
  return mc_mean(
      trials, seed, streams::amplitude_gap,
      [&](RngStream& s) {
        const double a11 = std::abs(model.draw(s));
        const double a12 = std::abs(model.draw(s));
        const double a21 = std::abs(model.draw(s));
        const double a22 = std::abs(model.draw(s));
        const double a = a11 * a11 * a22 * a22 + a12 * a12 * a21 * a21;
        const double b = a11 * a11 + a21 * a21 + 2.0;
        const double g = 2.0 * a11 * a12 * a21 * a22;
        // a^2 - g^2 = (a11^2*a22^2 - a12^2*a21^2)^2 >= 0; clamp rounding.
        const double root = std::sqrt(std::max(0.0, a * a - g * g));
        return 2.0 * std::log2(std::sqrt(a) * (a + b * b) /
                               (b * (a + root))) +
               2.0;
      },
      threads);
}

double concentration_penalty(double c, double m, double mean,
                             double second_moment, double eps) {
  if (!(c >= 0.0))
    throw std::invalid_argument("concentration_penalty: c must be >= 0");
  if (!(m >= 1.0))
    throw std::invalid_argument("concentration_penalty: m must be >= 1");
  if (!(eps > 0.0 && eps < mean))
    throw std::invalid_argument(
        "concentration_penalty: need 0 < eps < mean");
  if (!(second_moment >= mean * mean))
    throw std::invalid_argument(
        "concentration_penalty: second moment below mean^2");
  if (c == 0.0) return 0.0;
  const double cm2 = c * m * m;
  const double low = mean - eps;
  const double tail =
      second_moment / (m * eps * eps) * std::log2(1.0 + cm2 * low * low);
  // The ratio below is in (0, 1) whenever eps < mean, so the log is finite.
  const double body = std::log2(1.0 - cm2 * eps * (2.0 * mean - eps) /
                                          (1.0 + cm2 * mean * mean));
  return tail - body;
}

double gap_limit_uniform() { return 4.0 * std::log2(M_PI) - 4.0; }

double gap_limit_amplitude(double edet) {
  if (!(edet > 0.0 && edet <= 2.0))
    throw std::domain_error("gap_limit_amplitude: need E|det| in (0, 2]");
  return 4.0 - 4.0 * std::log2(edet);
}

RateEstimate expected_abs_det_mc(
    const std::function<Matrix2c(RngStream&)>& draw_block, std::size_t trials,
    std::uint64_t seed, int threads) {
  if (!draw_block)
    throw std::invalid_argument("expected_abs_det_mc: need a block source");
  if (trials < 1)
    throw std::invalid_argument("expected_abs_det_mc: trials must be >= 1");
  return mc_mean(
      trials, seed, streams::abs_det,
      [&](RngStream& s) { return std::abs(det2(draw_block(s))); }, threads);
}

RateEstimate expected_abs_det_mc(const FadingModel& model, std::size_t trials,
                                 std::uint64_t seed, int threads) {
  return expected_abs_det_mc(
      [&model](RngStream& s) {
        Matrix2c b;
        b << model.draw(s), model.draw(s), model.draw(s), model.draw(s);
        return b;
      },
      trials, seed, threads);
}

RateEstimate expected_abs_det_sq_mc(const FadingModel& model,
                                    std::size_t trials, std::uint64_t seed,
                                    int threads) {
  if (trials < 1)
    throw std::invalid_argument(
        "expected_abs_det_sq_mc: trials must be >= 1");
  return mc_mean(
      trials, seed, streams::abs_det_sq,
      [&](RngStream& s) {
        Matrix2c b;
        b << model.draw(s), model.draw(s), model.draw(s), model.draw(s);
        return std::norm(det2(b));
      },
      threads);
}

std::vector<GapReport> gap_vs_relays(const FadingModel& model, double p,
                                     const std::vector<int>& relay_counts,
                                     std::size_t trials, std::uint64_t seed,
                                     int threads) {
  if (relay_counts.empty())
    throw std::invalid_argument("gap_vs_relays: need at least one count");
  std::vector<GapReport> out;
  out.reserve(relay_counts.size());
  for (const int relays : relay_counts) {
    GapReport rep;
    rep.p = p;
    rep.relays = relays;
    rep.gap = estimate_difference(
        rate_mimo_mc(model, relays, p, trials, seed, threads),
        rate_in_mc(model, relays, p, trials, seed, threads));
    if (model.unit_modulus()) {
      if (relays == 2) {
        rep.kind = BoundKind::pair_closed;
        rep.bound = 4.0;
      } else {
        rep.kind = BoundKind::limit_uniform;
        rep.bound = gap_limit_uniform();
      }
    } else {
      if (relays == 2) {
        rep.kind = BoundKind::pair_amplitude;
        const auto est = gap_bound_amplitude_mc(model, trials, seed, threads);
        rep.bound = est.mean;
        rep.bound_se = est.std_error;
      } else {
        rep.kind = BoundKind::limit_amplitude;
        const auto edet = expected_abs_det_mc(model, trials, seed, threads);
        rep.bound = gap_limit_amplitude(edet.mean);
        // Delta method through 4 - 4*log2(edet).
        rep.bound_se = 4.0 * edet.std_error / (edet.mean * std::log(2.0));
      }
    }
    out.push_back(rep);
  }
  return out;
}

}  // namespace ein
