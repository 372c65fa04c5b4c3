#pragma once

#include <cstdint>

#include "ein/fading.hpp"
#include "ein/mc.hpp"

namespace ein {

/// A K-user ergodic interference channel instance: direct and cross links
/// fade i.i.d. under `model`, every transmitter runs at power p.
struct IcConfig {
  int users = 2;
  double p = 1.0;
  FadingModel model = FadingModel::rayleigh();
};

/// Per-user ergodic interference alignment rate
/// E[log2(1 + 2*|h|^2*p)] / 2; the sum rate is users times this.
RateEstimate rate_ia_mc(const IcConfig& cfg, std::size_t trials,
                        std::uint64_t seed, int threads = 0);

/// Per-pair ergodic sum capacity upper bound
/// E[log2(1 + (|h12|^2 + |h11|^2)*p / min{1, |h12|^2 / |h22|^2})] over
/// i.i.d. link triples.
RateEstimate pairwise_upper_mc(const IcConfig& cfg, std::size_t trials,
                               std::uint64_t seed, int threads = 0);

/// Power-independent per-user gap bound between the pairwise upper bound
/// and the alignment rate: log2(3/2)/2 + E[|log2(|h1|^2 / |h2|^2)|]/2 over
/// i.i.d. link pairs. Exactly log2(6)/2 under Rayleigh fading and
/// log2(3/2)/2 for unit-modulus fading.
RateEstimate ia_gap_bound_mc(const FadingModel& model, std::size_t trials,
                             std::uint64_t seed, int threads = 0);

}  // namespace ein
