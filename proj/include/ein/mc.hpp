#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ein/rng.hpp"

namespace ein {

/// Monte Carlo mean with its standard error (unbiased sample standard
/// deviation divided by sqrt(trials)).
struct RateEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
};

/// Difference a - b of two independent estimates; standard errors combine
/// in quadrature.
RateEstimate estimate_difference(const RateEstimate& a, const RateEstimate& b);

/// Parallel Monte Carlo mean of `per_trial` over `trials` i.i.d. trials.
///
/// Trial t draws from RngStream(seed, substream(domain, t)). Trials are
/// grouped into fixed-size blocks; each block is summed in trial order and
/// block sums are reduced in block order, so the result is bit-identical
/// for every worker count. threads <= 0 means use all hardware threads.
RateEstimate mc_mean(std::size_t trials, std::uint64_t seed,
                     std::uint64_t domain,
                     const std::function<double(RngStream&)>& per_trial,
                     int threads = 0);

/// As mc_mean, but each trial produces `dim` statistics at once (written
/// into the span). Returns one estimate per coordinate.
std::vector<RateEstimate> mc_mean_multi(
    std::size_t trials, std::uint64_t seed, std::uint64_t domain,
    std::size_t dim,
    const std::function<void(RngStream&, std::span<double>)>& per_trial,
    int threads = 0);

}  // namespace ein
