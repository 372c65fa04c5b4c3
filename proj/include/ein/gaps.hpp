#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ein/fading.hpp"
#include "ein/mc.hpp"

namespace ein {

/// Closed-form capacity gap rate_mimo - rate_in for the two-relay
/// uniform-phase network. Bounded by 4 bits for every p and approaches 4
/// as p grows.
double gap_closed_uniform(double p);

/// MC estimate of the two-relay gap bound for general unit-power amplitude
/// laws: E[2*log2(sqrt(A)*(A + B^2) / (B*(A + sqrt(A^2 - G^2))))] + 2 over
/// the four entry amplitudes. Power-independent.
RateEstimate gap_bound_amplitude_mc(const FadingModel& model,
                                    std::size_t trials, std::uint64_t seed,
                                    int threads = 0);

/// Correction term of the concentration bound
/// E[log2(1 + c*S_m^2)] >= log2(1 + c*m^2*mean^2) - penalty, where S_m sums
/// m i.i.d. nonnegative draws with the given mean and second moment and
/// eps in (0, mean) tunes the split. Vanishes as m grows with c*m fixed
/// away from the eps terms; see the large-system tests.
double concentration_penalty(double c, double m, double mean,
                             double second_moment, double eps);

/// Large-relay-count gap limit for unit-modulus fading: 4*log2(pi) - 4.
double gap_limit_uniform();

/// Large-relay-count gap limit 4 - 4*log2(E|det block|) for a unit-power
/// amplitude law with the given expected pair-block |det|; requires
/// edet in (0, 2].
double gap_limit_amplitude(double edet);

/// E[|det|] of one 2x2 pair block. The callable overload accepts any block
/// source (used by tests with deterministic blocks).
RateEstimate expected_abs_det_mc(const FadingModel& model, std::size_t trials,
                                 std::uint64_t seed, int threads = 0);
RateEstimate expected_abs_det_mc(
    const std::function<Matrix2c(RngStream&)>& draw_block, std::size_t trials,
    std::uint64_t seed, int threads = 0);

/// E[|det|^2] of one 2x2 pair block; equals 2 for every unit-power i.i.d.
/// entry law with uniform phase.
RateEstimate expected_abs_det_sq_mc(const FadingModel& model,
                                    std::size_t trials, std::uint64_t seed,
                                    int threads = 0);

enum class BoundKind {
  pair_closed,      // two relays, unit modulus: closed-form gap <= 4
  pair_amplitude,   // two relays, amplitude law: MC bound
  limit_uniform,    // many relays, unit modulus: 4*log2(pi) - 4
  limit_amplitude,  // many relays, amplitude law: 4 - 4*log2(E|det|)
};

struct GapReport {
  double p = 0.0;
  int relays = 0;
  RateEstimate gap;       // rate_mimo_mc - rate_in_mc, errors in quadrature
  double bound = 0.0;     // matching reference bound or limit
  double bound_se = 0.0;  // 0 when the bound is a closed form
  BoundKind kind = BoundKind::pair_closed;
};

/// Gap sweep across relay counts at fixed power. Two-relay entries carry
/// the applicable finite-L bound; larger counts carry the large-system
/// limit as a reference line.
std::vector<GapReport> gap_vs_relays(const FadingModel& model, double p,
                                     const std::vector<int>& relay_counts,
                                     std::size_t trials, std::uint64_t seed,
                                     int threads = 0);

}  // namespace ein
