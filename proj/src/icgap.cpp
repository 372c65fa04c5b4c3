#include "ein/icgap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ein {
namespace {

void check(const IcConfig& cfg, std::size_t trials, const char* who) {
  if (cfg.users < 2)
    throw std::invalid_argument(std::string(who) + ": need >= 2 users");
  if (!(cfg.p > 0.0))
    throw std::invalid_argument(std::string(who) + ": power must be > 0");
  if (trials < 1)
    throw std::invalid_argument(std::string(who) + ": trials must be >= 1");
}

}  // namespace

RateEstimate rate_ia_mc(const IcConfig& cfg, std::size_t trials,
                        std::uint64_t seed, int threads) {
  check(cfg, trials, "rate_ia_mc");
  return mc_mean(
      trials, seed, streams::ia_rate,
      [&](RngStream& s) {
        const double h2 = std::norm(cfg.model.draw(s));
        return 0.5 * std::log2(1.0 + 2.0 * h2 * cfg.p);
      },
      threads);
}

RateEstimate pairwise_upper_mc(const IcConfig& cfg, std::size_t trials,
                               std::uint64_t seed, int threads) {
  check(cfg, trials, "pairwise_upper_mc");
  return mc_mean(
      trials, seed, streams::ia_upper,
      [&](RngStream& s) {
        const double h11 = std::norm(cfg.model.draw(s));
        const double h12 = std::norm(cfg.model.draw(s));
        const double h22 = std::norm(cfg.model.draw(s));
        const double cut = std::min(1.0, h12 / h22);
        return std::log2(1.0 + (h12 + h11) * cfg.p / cut);
      },
      threads);
}

RateEstimate ia_gap_bound_mc(const FadingModel& model, std::size_t trials,
                             std::uint64_t seed, int threads) {
  if (trials < 1)
    throw std::invalid_argument("ia_gap_bound_mc: trials must be >= 1");
  const double base = 0.5 * std::log2(1.5);
  return mc_mean(
      trials, seed, streams::ia_gap,
      [&](RngStream& s) {
        const double h1 = std::norm(model.draw(s));
        const double h2 = std::norm(model.draw(s));
        return base + 0.5 * std::abs(std::log2(h1 / h2));
      },
      threads);
}

}  // namespace ein
