#pragma once

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "ein/complex_mat.hpp"
#include "ein/fading.hpp"
#include "ein/pairing.hpp"

namespace ein {

/// Raised when a quantization cell's center has a (near-)singular relay
/// pair block, so no finite neutralizing gain exists for it.
struct DegenerateCell : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// |det| below this makes a cell degenerate.
inline constexpr double kDetFloor = 1e-9;

/// Per-relay amplification magnitude gamma = sqrt(p / (1 + 2p)). Keeps the
/// average relay transmit power at p when sources transmit at power p over
/// unit-power fading.
double gamma_factor(double p);

// Diagonal relay gain matrix for 2M relays: pair m contributes the 2x2
// block gamma * u_m * diag(1, -1), with u_m = det(Q_m)^* / |det(Q_m)| a
// unit-modulus phase alignment factor taken from the pair's cell center Q.
class RelayGains {
 public:
  RelayGains(double gamma, std::vector<cplx> unit_factors);

  int pairs() const { return static_cast<int>(unit_factors_.size()); }
  double gamma() const { return gamma_; }
  const std::vector<cplx>& unit_factors() const { return unit_factors_; }

  /// The 2M diagonal entries (gamma*u_m, -gamma*u_m), pair by pair.
  Eigen::VectorXcd diagonal() const;
  /// Dense 2M x 2M form; handy for tests, the library always uses the
  /// diagonal.
  MatrixXc matrix() const;

 private:
  double gamma_;
  std::vector<cplx> unit_factors_;
};

/// Gains for the cell center q_center ((>= 2*pairs) x 2, pairs inferred
/// from the row count). Throws DegenerateCell if any pair block of the
/// center has |det| <= kDetFloor.
RelayGains relay_gain_matrix(const MatrixXc& q_center, double p);

/// Two-hop end-to-end 2x2 matrix g * Gamma * h. When g = f_map(h) and the
/// gains come from h itself, this is exactly diagonal: interference
/// neutralization.
Matrix2c effective_channel(const MatrixXc& g, const RelayGains& gains,
                           const MatrixXc& h);

/// Per-destination SINR of the neutralization scheme in the perfect-match
/// limit (g = f_map(h), gains from h): signal P*gamma^2*(sum_m |det h_m|)^2
/// over 1 + amplified noise. dest is 1 or 2.
double asymptotic_sinr(const MatrixXc& h, double p, int dest);

struct SinrPair {
  double sinr1;
  double sinr2;
};

/// Exact per-destination SINR for realized hops (h, g) when the relay gains
/// are derived from the cell center q_center. Reduces to asymptotic_sinr
/// when g = f_map(h) and q_center = h.
SinrPair sinr_exact(const MatrixXc& h, const MatrixXc& g, double p,
                    const MatrixXc& q_center);
SinrPair sinr_exact(const MatrixXc& h, const MatrixXc& g, double p);

// Quantizer choice for the block simulator.
struct GridSpec {
  double delta;
  int n;
};
struct PhaseSpec {
  int n;
};
struct ScheduleSpec {};  // grid from default_schedule(n_b, pairs)
using QuantizerSpec = std::variant<GridSpec, PhaseSpec, ScheduleSpec>;

struct BlockOptions {
  /// Estimate each matched pair's rate as the minimum of log2(1 + SINR)
  /// over sampled corner probes of the two cells (plus the realized draw)
  /// instead of the realized draw alone. Conservative variant.
  bool min_over_cell = false;
  int corner_probes = 8;
};

struct BlockResult {
  // Throughput view: sum of log2(1 + SINR_i) over used pairs divided by the
  // block length; slots that were never matched (or whose cell was
  // degenerate) contribute zero.
  double rate1 = 0.0;
  double rate2 = 0.0;
  // Per-matched-pair view: the same sums divided by the number of used
  // pairs. This is the estimate that approaches the ergodic per-user rate
  // as the block grows; matched_fraction carries the normalization gap.
  double matched_rate1 = 0.0;
  double matched_rate2 = 0.0;
  // Mean and standard error of (log2(1+SINR_1) + log2(1+SINR_2))/2 over
  // used pairs.
  double per_user_matched_mean = 0.0;
  double per_user_matched_se = 0.0;
  double matched_fraction = 0.0;  // used pairs / n_b
  std::size_t pairs_used = 0;
  std::size_t pairs_degenerate = 0;
};

/// One-shot simulation of the quantize-and-pair scheme over a block of n_b
/// slots per hop: draws both hop sequences, groups them by quantizer cell,
/// matches first-hop cells with their image cells on the second hop, and
/// scores every matched pair by its exact SINR with gains taken at the
/// first-hop cell center. Degenerate-center pairs are skipped and counted.
BlockResult simulate_block(const FadingModel& model, int relays, double p,
                           std::size_t n_b, const QuantizerSpec& spec,
                           std::uint64_t seed, const BlockOptions& opt = {});

}  // namespace ein
