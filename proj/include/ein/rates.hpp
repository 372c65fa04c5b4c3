#pragma once

#include <cstdint>

#include "ein/fading.hpp"
#include "ein/mc.hpp"

namespace ein {

/// Sum-rate of the interference neutralization scheme in the perfect-match
/// limit: E[sum_i log2(1 + asymptotic SINR_i)] over channel draws, using
/// floor(relays/2) relay pairs.
RateEstimate rate_in_mc(const FadingModel& model, int relays, double p,
                        std::size_t trials, std::uint64_t seed,
                        int threads = 0);

/// Cut-set style ergodic benchmark: E[log2 det(I_2 + p * H^H H)] with the
/// full (relays x 2) first hop.
RateEstimate rate_mimo_mc(const FadingModel& model, int relays, double p,
                          std::size_t trials, std::uint64_t seed,
                          int threads = 0);

// Closed forms for the two-relay unit-modulus (uniform-phase) network.
double rate_in_closed_uniform(double p);
double rate_mimo_closed_uniform(double p);

/// E[log2(1 - x*cos(phi))] over uniform phi, in closed form:
/// log2(1 + sqrt(1 - x^2)) - 1 for |x| <= 1. Throws std::domain_error
/// outside [-1, 1].
double expected_log_cos_closed(double x);
RateEstimate expected_log_cos_mc(double x, std::size_t trials,
                                 std::uint64_t seed, int threads = 0);

/// Jensen bound on the MIMO benchmark: 2*log2(1 + p*(2*pairs + 1)).
double jensen_upper(double p, int pairs);

double db_to_linear(double db);
double linear_to_db(double p);

}  // namespace ein
