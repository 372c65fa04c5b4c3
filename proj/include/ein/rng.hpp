#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace ein {

// Philox 4x32-10 counter-based generator (Salmon et al., SC'11).
//
// A stream is identified by (seed, stream id). Draws advance a 64-bit
// in-stream counter, so every value is a pure function of
// (seed, stream, draw index) and is reproducible regardless of thread
// count or evaluation order. Monte Carlo drivers give each trial its own
// stream id; see substream() below.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_{static_cast<std::uint32_t>(stream),
                static_cast<std::uint32_t>(stream >> 32)} {}

  std::uint32_t next_u32() noexcept {
    if (pos_ == 4) {
      generate();
      pos_ = 0;
    }
    return block_[pos_++];
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform();
  }

  /// Exp(1); never evaluates log at zero since uniform() < 1.
  double exponential() noexcept { return -std::log1p(-uniform()); }

  /// Uniform angle on [0, 2*pi).
  double angle() noexcept { return 2.0 * M_PI * uniform(); }

  /// Unit-modulus complex number with uniform phase.
  std::complex<double> unit_phase() noexcept {
    const double a = angle();
    return {std::cos(a), std::sin(a)};
  }

 private:
  void generate() noexcept {
    std::array<std::uint32_t, 4> x{ctr_lo_, ctr_hi_, stream_[0], stream_[1]};
    std::uint32_t k0 = key_[0];
    std::uint32_t k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * x[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * x[2];
      x = {static_cast<std::uint32_t>(p1 >> 32) ^ x[1] ^ k0,
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ x[3] ^ k1,
           static_cast<std::uint32_t>(p0)};
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    block_ = x;
    if (++ctr_lo_ == 0) ++ctr_hi_;
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 2> stream_;
  std::uint32_t ctr_lo_ = 0;
  std::uint32_t ctr_hi_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int pos_ = 4;
};

/// Stream id for trial `index` within a named domain. Domains keep
/// estimators that share a seed statistically independent of each other.
constexpr std::uint64_t substream(std::uint64_t domain,
                                  std::uint64_t index) noexcept {
  return (domain << 48) | (index & 0xFFFFFFFFFFFFull);
}

// Stream domains. Every estimator draws from its own domain so that runs
// sharing a seed never reuse random numbers across quantities.
namespace streams {
inline constexpr std::uint64_t rate_in = 1;
inline constexpr std::uint64_t rate_mimo = 2;
inline constexpr std::uint64_t abs_det = 3;
inline constexpr std::uint64_t abs_det_sq = 4;
inline constexpr std::uint64_t amplitude_gap = 5;
inline constexpr std::uint64_t log_cos = 6;
inline constexpr std::uint64_t sum_concentration = 7;
inline constexpr std::uint64_t ia_rate = 8;
inline constexpr std::uint64_t ia_upper = 9;
inline constexpr std::uint64_t ia_gap = 10;
inline constexpr std::uint64_t relay_power = 11;
inline constexpr std::uint64_t block_first_hop = 12;
inline constexpr std::uint64_t block_second_hop = 13;
inline constexpr std::uint64_t cell_probe = 14;
inline constexpr std::uint64_t model_check = 15;
inline constexpr std::uint64_t verify = 16;
inline constexpr std::uint64_t ratio_mean = 17;
}  // namespace streams

}  // namespace ein
