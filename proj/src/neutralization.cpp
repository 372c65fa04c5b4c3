#include "ein/neutralization.hpp"

#include <algorithm>
#include <cmath>

namespace ein {
namespace {

int pairs_from_rows(const MatrixXc& h, const char* who) {
  if (h.cols() != 2 || h.rows() < 2)
    throw std::invalid_argument(std::string(who) +
                                ": first-hop matrix must be (>= 2) x 2");
  return static_cast<int>(h.rows() / 2);
}

void check_power(double p, const char* who) {
  if (!(p >= 0.0))
    throw std::invalid_argument(std::string(who) + ": power must be >= 0");
}

}  // namespace

double gamma_factor(double p) {
  check_power(p, "gamma_factor");
  return std::sqrt(p / (1.0 + 2.0 * p));
}

RelayGains::RelayGains(double gamma, std::vector<cplx> unit_factors)
    : gamma_(gamma), unit_factors_(std::move(unit_factors)) {
  if (unit_factors_.empty())
    throw std::invalid_argument("RelayGains: need at least one pair");
}

Eigen::VectorXcd RelayGains::diagonal() const {
  Eigen::VectorXcd d(2 * pairs());
  for (int m = 0; m < pairs(); ++m) {
    d(2 * m) = gamma_ * unit_factors_[m];
    d(2 * m + 1) = -gamma_ * unit_factors_[m];
  }
  return d;
}

MatrixXc RelayGains::matrix() const { return diagonal().asDiagonal(); }

RelayGains relay_gain_matrix(const MatrixXc& q_center, double p) {
  check_power(p, "relay_gain_matrix");
  const int pairs = pairs_from_rows(q_center, "relay_gain_matrix");
  std::vector<cplx> unit(static_cast<std::size_t>(pairs));
  for (int m = 0; m < pairs; ++m) {
    const cplx d = det2(q_center.block<2, 2>(2 * m, 0));
    const double mag = std::abs(d);
    if (mag <= kDetFloor)
      throw DegenerateCell("relay_gain_matrix: cell center pair block has "
                           "|det| <= " +
                           std::to_string(kDetFloor));
    unit[static_cast<std::size_t>(m)] = std::conj(d) / mag;
  }
  return RelayGains(gamma_factor(p), std::move(unit));
}

Matrix2c effective_channel(const MatrixXc& g, const RelayGains& gains,
                           const MatrixXc& h) {
  const int pairs = gains.pairs();
  if (h.cols() != 2 || h.rows() < 2 * pairs)
    throw std::invalid_argument("effective_channel: h must be (2*pairs) x 2");
  if (g.rows() != 2 || g.cols() < 2 * pairs)
    throw std::invalid_argument("effective_channel: g must be 2 x (2*pairs)");
  return g.leftCols(2 * pairs) * gains.diagonal().asDiagonal() *
         h.topRows(2 * pairs);
}

double asymptotic_sinr(const MatrixXc& h, double p, int dest) {
  check_power(p, "asymptotic_sinr");
  if (dest != 1 && dest != 2)
    throw std::invalid_argument("asymptotic_sinr: dest must be 1 or 2");
  const int pairs = pairs_from_rows(h, "asymptotic_sinr");
  const double gamma = gamma_factor(p);
  double det_sum = 0.0;
  for (int m = 0; m < pairs; ++m)
    det_sum += std::abs(det2(h.block<2, 2>(2 * m, 0)));
  // Amplified relay noise at destination `dest` is carried by the column of
  // the other source: gamma^2 * squared norm of column (3 - dest) over the
  // used rows.
  const double other = h.col(2 - dest).head(2 * pairs).squaredNorm();
  const double noise = 1.0 + gamma * gamma * other;
  return p * gamma * gamma * det_sum * det_sum / noise;
}

SinrPair sinr_exact(const MatrixXc& h, const MatrixXc& g, double p,
                    const MatrixXc& q_center) {
  check_power(p, "sinr_exact");
  const int pairs = pairs_from_rows(h, "sinr_exact");
  if (g.rows() != 2 || g.cols() != 2 * pairs)
    throw std::invalid_argument("sinr_exact: g must be 2 x (2*pairs)");
  if (q_center.cols() != 2 || q_center.rows() < 2 * pairs)
    throw std::invalid_argument("sinr_exact: center must be (2*pairs) x 2");

  const RelayGains gains = relay_gain_matrix(q_center.topRows(2 * pairs), p);
  const double gamma = gains.gamma();

  const MatrixXc hh = h.topRows(2 * pairs);
  const SecondHopMatrix fh = f_map(hh, pairs);
  const MatrixXc delta = g - fh;  // second-hop deviation from the ideal map
  const Matrix2c dgh = delta * gains.diagonal().asDiagonal() * hh;

  double det_sum = 0.0;
  for (int m = 0; m < pairs; ++m)
    det_sum += std::abs(det2(hh.block<2, 2>(2 * m, 0)));

  SinrPair out{};
  for (int dest = 1; dest <= 2; ++dest) {
    const int i = dest - 1;     // this destination, 0-based
    const int o = 2 - dest;     // the other one
    const double sign = dest == 1 ? 1.0 : -1.0;
    const cplx signal = sign * gamma * det_sum + dgh(i, i);

    // Residual noise: the relay noise reaches destination i through the
    // realized second hop g = f_map(h) + delta, whose row i has entries
    // h_m(o, o) + delta_m(i, i) and h_m(i, o) + delta_m(i, o) per pair.
    double amplified = 0.0;
    for (int m = 0; m < pairs; ++m) {
      amplified += std::norm(hh(2 * m + o, o) + delta(i, 2 * m + i));
      amplified += std::norm(hh(2 * m + i, o) + delta(i, 2 * m + o));
    }
    const double denom =
        1.0 + gamma * gamma * amplified + p * std::norm(dgh(i, o));
    const double sinr = p * std::norm(signal) / denom;
    (dest == 1 ? out.sinr1 : out.sinr2) = sinr;
  }
  return out;
}

SinrPair sinr_exact(const MatrixXc& h, const MatrixXc& g, double p) {
  return sinr_exact(h, g, p, h);
}

namespace {

std::pair<Quantizer, Quantizer> make_quantizers(const QuantizerSpec& spec,
                                                int pairs, std::size_t n_b) {
  const Eigen::Index rows = 2 * pairs;
  if (const auto* grid = std::get_if<GridSpec>(&spec))
    return {GridQuantizer(grid->delta, grid->n, rows, 2),
            GridQuantizer(grid->delta, grid->n, 2, rows)};
  if (const auto* phase = std::get_if<PhaseSpec>(&spec))
    return {PhaseQuantizer(phase->n, rows, 2),
            PhaseQuantizer(phase->n, 2, rows)};
  const Schedule s = default_schedule(static_cast<double>(n_b), pairs);
  return {GridQuantizer(s.delta, s.n, rows, 2),
          GridQuantizer(s.delta, s.n, 2, rows)};
}

// A sampled corner of the cell around `center`: every entry is pushed to one
// of its per-axis cell boundaries. Probing corners of the closed cell gives
// a conservative stand-in for the infimum over the cell.
MatrixXc corner_probe(const Quantizer& q, const MatrixXc& center,
                      RngStream& s) {
  MatrixXc out = center;
  if (const auto* grid = std::get_if<GridQuantizer>(&q)) {
    const double half = grid->delta() / 2.0;
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index c = 0; c < out.cols(); ++c) {
        const double dr = s.uniform() < 0.5 ? -half : half;
        const double di = s.uniform() < 0.5 ? -half : half;
        out(r, c) += cplx(dr, di);
      }
  } else {
    const auto& phase = std::get<PhaseQuantizer>(q);
    const double edge = M_PI / phase.n();
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index c = 0; c < out.cols(); ++c) {
        const double a = s.uniform() < 0.5 ? -edge : edge;
        out(r, c) *= cplx(std::cos(a), std::sin(a));
      }
  }
  return out;
}

}  // namespace

BlockResult simulate_block(const FadingModel& model, int relays, double p,
                           std::size_t n_b, const QuantizerSpec& spec,
                           std::uint64_t seed, const BlockOptions& opt) {
  check_power(p, "simulate_block");
  if (relays < 2)
    throw std::invalid_argument("simulate_block: need at least 2 relays");
  if (n_b < 1)
    throw std::invalid_argument("simulate_block: block length must be >= 1");
  const int pairs = relays / 2;  // odd leftover relay is never paired
  const auto [q1, q2] = make_quantizers(spec, pairs, n_b);

  std::vector<MatrixXc> hop1(n_b), hop2(n_b);
  for (std::size_t t = 0; t < n_b; ++t) {
    RngStream s1(seed, substream(streams::block_first_hop, t));
    hop1[t] = sample_matrix(model, relays, 2, s1).topRows(2 * pairs);
    RngStream s2(seed, substream(streams::block_second_hop, t));
    hop2[t] = sample_matrix(model, 2, relays, s2).leftCols(2 * pairs);
  }

  const IndexSets t1 = build_index_sets(q1, hop1);
  const IndexSets t2 = build_index_sets(q2, hop2);

  BlockResult res;
  double sum1 = 0.0, sum2 = 0.0, per_sum = 0.0, per_sum_sq = 0.0;
  std::size_t probe_idx = 0;

  for (const auto& [cell, list1] : t1.by_cell) {
    const auto it = t2.by_cell.find(cell_image_under_f(cell, pairs));
    if (it == t2.by_cell.end()) continue;
    const std::size_t k = std::min(list1.size(), it->second.size());
    const MatrixXc center = cell_center(q1, cell);
    try {
      relay_gain_matrix(center, p);
    } catch (const DegenerateCell&) {
      res.pairs_degenerate += k;
      continue;
    }
    const MatrixXc image_center =
        cell_center(q2, cell_image_under_f(cell, pairs));
    for (std::size_t j = 0; j < k; ++j) {
      const MatrixXc& h = hop1[static_cast<std::size_t>(list1[j] - 1)];
      const MatrixXc& g = hop2[static_cast<std::size_t>(it->second[j] - 1)];
      const SinrPair sp = sinr_exact(h, g, p, center);
      double r1 = std::log2(1.0 + sp.sinr1);
      double r2 = std::log2(1.0 + sp.sinr2);
      if (opt.min_over_cell) {
        RngStream ps(seed, substream(streams::cell_probe, probe_idx));
        for (int probe = 0; probe < opt.corner_probes; ++probe) {
          const MatrixXc hp = corner_probe(q1, center, ps);
          const MatrixXc gp = corner_probe(q2, image_center, ps);
          const SinrPair spp = sinr_exact(hp, gp, p, center);
          r1 = std::min(r1, std::log2(1.0 + spp.sinr1));
          r2 = std::min(r2, std::log2(1.0 + spp.sinr2));
        }
      }
      ++probe_idx;
      sum1 += r1;
      sum2 += r2;
      const double per_user = (r1 + r2) / 2.0;
      per_sum += per_user;
      per_sum_sq += per_user * per_user;
      ++res.pairs_used;
    }
  }

  const double nb = static_cast<double>(n_b);
  res.rate1 = sum1 / nb;
  res.rate2 = sum2 / nb;
  res.matched_fraction = static_cast<double>(res.pairs_used) / nb;
  if (res.pairs_used > 0) {
    const double u = static_cast<double>(res.pairs_used);
    res.matched_rate1 = sum1 / u;
    res.matched_rate2 = sum2 / u;
    res.per_user_matched_mean = per_sum / u;
    if (res.pairs_used > 1) {
      const double var = std::max(
          0.0, (per_sum_sq - u * res.per_user_matched_mean *
                                 res.per_user_matched_mean) /
                   (u - 1.0));
      res.per_user_matched_se = std::sqrt(var / u);
    }
  }
  return res;
}

}  // namespace ein
