#include "ein/rates.hpp"

#include <cmath>
#include <stdexcept>

#include "ein/neutralization.hpp"

namespace ein {
namespace {

void check_args(int relays, double p, std::size_t trials, const char* who) {
  if (relays < 2)
    throw std::invalid_argument(std::string(who) + ": need >= 2 relays");
  if (!(p >= 0.0))
    throw std::invalid_argument(std::string(who) + ": power must be >= 0");
  if (trials < 1)
    throw std::invalid_argument(std::string(who) + ": trials must be >= 1");
}

}  // namespace

RateEstimate rate_in_mc(const FadingModel& model, int relays, double p,
                        std::size_t trials, std::uint64_t seed, int threads) {
  check_args(relays, p, trials, "rate_in_mc");
  return mc_mean(
      trials, seed, streams::rate_in,
      [&](RngStream& s) {
        const MatrixXc h = sample_matrix(model, relays, 2, s);
        return std::log2(1.0 + asymptotic_sinr(h, p, 1)) +
               std::log2(1.0 + asymptotic_sinr(h, p, 2));
      },
      threads);
}

RateEstimate rate_mimo_mc(const FadingModel& model, int relays, double p,
                          std::size_t trials, std::uint64_t seed,
                          int threads) {
  check_args(relays, p, trials, "rate_mimo_mc");
  return mc_mean(
      trials, seed, streams::rate_mimo,
      [&](RngStream& s) {
        const MatrixXc h = sample_matrix(model, relays, 2, s);
        // 2x2 Gram form of det(I_L + p*H*H^H); both dets agree.
        const Matrix2c gram =
            Matrix2c::Identity() + p * (h.adjoint() * h);
        return std::log2(det2(gram).real());
      },
      threads);
}

double rate_in_closed_uniform(double p) {
  if (!(p >= 0.0))
    throw std::invalid_argument("rate_in_closed_uniform: power must be >= 0");
  const double x = 2.0 * p * p / (1.0 + 4.0 * p + 2.0 * p * p);
  return 2.0 * std::log2(1.0 + 2.0 * p * p / (1.0 + 4.0 * p)) +
         2.0 * (expected_log_cos_closed(x) + 1.0) - 2.0;
}

double rate_mimo_closed_uniform(double p) {
  if (!(p >= 0.0))
    throw std::invalid_argument(
        "rate_mimo_closed_uniform: power must be >= 0");
  const double x = 2.0 * p * p / (1.0 + 4.0 * p + 2.0 * p * p);
  return std::log2(1.0 + 4.0 * p + 2.0 * p * p) +
         (expected_log_cos_closed(x) + 1.0) - 1.0;
}

double expected_log_cos_closed(double x) {
  if (!(std::abs(x) <= 1.0))
    throw std::domain_error("expected_log_cos_closed: need |x| <= 1");
  return std::log2(1.0 + std::sqrt(std::max(0.0, 1.0 - x * x))) - 1.0;
}

RateEstimate expected_log_cos_mc(double x, std::size_t trials,
                                 std::uint64_t seed, int threads) {
  if (!(std::abs(x) <= 1.0))
    throw std::domain_error("expected_log_cos_mc: need |x| <= 1");
  if (trials < 1)
    throw std::invalid_argument("expected_log_cos_mc: trials must be >= 1");
  return mc_mean(
      trials, seed, streams::log_cos,
      [x](RngStream& s) {
        // 1 - x*cos(a) = (1 - x) + 2x*sin^2(a/2); stable at x ~ 1, a ~ 0.
        const double half = std::sin(s.angle() / 2.0);
        return std::log2((1.0 - x) + 2.0 * x * half * half);
      },
      threads);
}

double jensen_upper(double p, int pairs) {
  if (pairs < 1) throw std::invalid_argument("jensen_upper: pairs must be >= 1");
  if (!(p >= 0.0))
    throw std::invalid_argument("jensen_upper: power must be >= 0");
  return 2.0 * std::log2(1.0 + p * (2.0 * pairs + 1.0));
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double p) {
  if (!(p > 0.0))
    throw std::domain_error("linear_to_db: power must be > 0");
  return 10.0 * std::log10(p);
}

}  // namespace ein
