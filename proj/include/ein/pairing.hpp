#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "ein/complex_mat.hpp"

namespace ein {

// Cells are identified by integer coordinates per matrix entry, row-major:
// a grid cell stores (re index, im index) pairs, a phase cell one bin index
// per entry. Integer ids make the block-permutation image map exact.
struct CellId {
  std::vector<std::int32_t> coords;
  auto operator<=>(const CellId&) const = default;
};

/// Square complex lattice quantizer. Cell k = (k_re, k_im) has center
/// delta*(k_re + j*k_im) and covers the half-open square of side delta
/// around it; centers are kept within |re|, |im| <= delta*n. Entries
/// falling outside any kept cell make the whole matrix unquantizable.
class GridQuantizer {
 public:
  GridQuantizer(double delta, int n, Eigen::Index rows, Eigen::Index cols);

  std::optional<CellId> quantize(const MatrixXc& m) const;
  MatrixXc center(const CellId& cell) const;

  double delta() const { return delta_; }
  int n() const { return n_; }
  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  /// (2n+1)^(2*rows*cols); returned as double since it overflows quickly.
  double cell_count() const;

 private:
  double delta_;
  int n_;
  Eigen::Index rows_, cols_;
};

/// Phase-only quantizer with n bins exp(j*2*pi*k/n), k = 0..n-1; bin k
/// covers angles within [-pi/n, pi/n) of its center, with wraparound, so
/// every matrix quantizes. Meant for unit-modulus fading.
class PhaseQuantizer {
 public:
  PhaseQuantizer(int n, Eigen::Index rows, Eigen::Index cols);

  CellId quantize(const MatrixXc& m) const;
  MatrixXc center(const CellId& cell) const;

  int n() const { return n_; }
  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  double cell_count() const;  // n^(rows*cols)

 private:
  int n_;
  Eigen::Index rows_, cols_;
};

using Quantizer = std::variant<GridQuantizer, PhaseQuantizer>;

/// Uniform interface over the variant. The phase quantizer never declines.
std::optional<CellId> quantize(const Quantizer& q, const MatrixXc& m);
MatrixXc cell_center(const Quantizer& q, const CellId& cell);

/// First-hop cell -> the second-hop cell whose center is f_map(center).
/// Pure coordinate permutation (f_map only moves entries), hence exact and
/// bijective. The cell must come from a (2*pairs) x 2 quantizer; the grid /
/// phase layout is inferred from the coordinate count.
CellId cell_image_under_f(const CellId& cell, int pairs);
CellId cell_preimage_under_f(const CellId& cell, int pairs);

/// Time indices (1-based) grouped by the cell their matrix quantizes to;
/// out-of-range matrices are dropped. The ordered map fixes the iteration
/// order used by matching.
struct IndexSets {
  std::map<CellId, std::vector<std::int64_t>> by_cell;
};

IndexSets build_index_sets(const Quantizer& q,
                           const std::vector<MatrixXc>& seq);

/// Greedy in-order matching: for each first-hop cell Q, the first k indices
/// of Q are paired with the first k of the image cell f(Q) on the second
/// hop, k = min of the two cardinalities.
std::vector<std::pair<std::int64_t, std::int64_t>> match_pairs(
    const IndexSets& first, const IndexSets& second, int pairs);

/// Block-length dependent quantizer schedule: delta shrinks and the kept
/// range grows slowly enough with n_b that, per hop, every cell still
/// collects many indices as n_b grows.
struct Schedule {
  double delta;      // n_b^(-1/(96*pairs))
  int n;             // max(1, round(n_b^(1/(48*pairs))))
  double tolerance;  // n_b^(-1/3)
};

Schedule default_schedule(double n_b, int pairs);

}  // namespace ein
