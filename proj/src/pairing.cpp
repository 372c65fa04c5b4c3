#include "ein/pairing.hpp"

#include <cmath>
#include <stdexcept>

namespace ein {
namespace {

void check_dims(Eigen::Index rows, Eigen::Index cols) {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("quantizer: dims must be positive");
}

void check_shape(const MatrixXc& m, Eigen::Index rows, Eigen::Index cols,
                 const char* who) {
  if (m.rows() != rows || m.cols() != cols)
    throw std::invalid_argument(std::string(who) + ": matrix shape mismatch");
}

// Entry permutation behind cell_image_under_f. Entry (r, 2m+c) of the image
// (2 x 2M, row-major) comes from entry (2m+1-c, 1-r) of the source
// (2M x 2, row-major); this is f2_map applied block by block.
std::vector<std::int32_t> image_entry_of_source(int pairs) {
  const int entries = 4 * pairs;
  std::vector<std::int32_t> src(entries);
  for (int m = 0; m < pairs; ++m)
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        src[r * 2 * pairs + 2 * m + c] = 2 * (2 * m + 1 - c) + (1 - r);
  return src;
}

CellId permute_cell(const CellId& cell, int pairs, bool forward) {
  if (pairs < 1)
    throw std::invalid_argument("cell_image_under_f: pairs must be >= 1");
  const std::size_t entries = static_cast<std::size_t>(4 * pairs);
  std::size_t width;  // coords per entry: grid 2, phase 1
  if (cell.coords.size() == 2 * entries)
    width = 2;
  else if (cell.coords.size() == entries)
    width = 1;
  else
    throw std::invalid_argument(
        "cell_image_under_f: coordinate count does not fit a (2*pairs) x 2 "
        "cell");
  const auto src = image_entry_of_source(pairs);
  CellId out;
  out.coords.resize(cell.coords.size());
  for (std::size_t e = 0; e < entries; ++e) {
    // forward: image[e] = source[src[e]]; backward inverts the permutation.
    const std::size_t from = forward ? static_cast<std::size_t>(src[e]) : e;
    const std::size_t to = forward ? e : static_cast<std::size_t>(src[e]);
    for (std::size_t w = 0; w < width; ++w)
      out.coords[to * width + w] = cell.coords[from * width + w];
  }
  return out;
}

}  // namespace

GridQuantizer::GridQuantizer(double delta, int n, Eigen::Index rows,
                             Eigen::Index cols)
    : delta_(delta), n_(n), rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  if (!(delta > 0.0)) throw std::invalid_argument("grid: delta must be > 0");
  if (n < 1) throw std::invalid_argument("grid: n must be >= 1");
}

std::optional<CellId> GridQuantizer::quantize(const MatrixXc& m) const {
  check_shape(m, rows_, cols_, "grid quantize");
  CellId cell;
  cell.coords.reserve(static_cast<std::size_t>(2 * rows_ * cols_));
  for (Eigen::Index r = 0; r < rows_; ++r)
    for (Eigen::Index c = 0; c < cols_; ++c) {
      // Half-open cells: center + [-delta/2, delta/2) per axis. The negated
      // comparison also rejects NaN entries instead of casting them.
      const double kr = std::floor(m(r, c).real() / delta_ + 0.5);
      const double ki = std::floor(m(r, c).imag() / delta_ + 0.5);
      if (!(std::abs(kr) <= n_ && std::abs(ki) <= n_)) return std::nullopt;
      cell.coords.push_back(static_cast<std::int32_t>(kr));
      cell.coords.push_back(static_cast<std::int32_t>(ki));
    }
  return cell;
}

MatrixXc GridQuantizer::center(const CellId& cell) const {
  if (cell.coords.size() != static_cast<std::size_t>(2 * rows_ * cols_))
    throw std::invalid_argument("grid center: coordinate count mismatch");
  MatrixXc m(rows_, cols_);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows_; ++r)
    for (Eigen::Index c = 0; c < cols_; ++c) {
      m(r, c) = cplx(delta_ * cell.coords[k], delta_ * cell.coords[k + 1]);
      k += 2;
    }
  return m;
}

double GridQuantizer::cell_count() const {
  return std::pow(2.0 * n_ + 1.0, 2.0 * static_cast<double>(rows_ * cols_));
}

PhaseQuantizer::PhaseQuantizer(int n, Eigen::Index rows, Eigen::Index cols)
    : n_(n), rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  if (n < 1) throw std::invalid_argument("phase: n must be >= 1");
}

CellId PhaseQuantizer::quantize(const MatrixXc& m) const {
  check_shape(m, rows_, cols_, "phase quantize");
  CellId cell;
  cell.coords.reserve(static_cast<std::size_t>(rows_ * cols_));
  for (Eigen::Index r = 0; r < rows_; ++r)
    for (Eigen::Index c = 0; c < cols_; ++c) {
      const double a = std::arg(m(r, c));  // (-pi, pi]
      auto k = static_cast<std::int64_t>(
          std::floor(a * n_ / (2.0 * M_PI) + 0.5));
      k %= n_;
      if (k < 0) k += n_;
      cell.coords.push_back(static_cast<std::int32_t>(k));
    }
  return cell;
}

MatrixXc PhaseQuantizer::center(const CellId& cell) const {
  if (cell.coords.size() != static_cast<std::size_t>(rows_ * cols_))
    throw std::invalid_argument("phase center: coordinate count mismatch");
  MatrixXc m(rows_, cols_);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows_; ++r)
    for (Eigen::Index c = 0; c < cols_; ++c) {
      const double a = 2.0 * M_PI * cell.coords[k++] / n_;
      m(r, c) = cplx(std::cos(a), std::sin(a));
    }
  return m;
}

double PhaseQuantizer::cell_count() const {
  return std::pow(static_cast<double>(n_), static_cast<double>(rows_ * cols_));
}

std::optional<CellId> quantize(const Quantizer& q, const MatrixXc& m) {
  if (const auto* g = std::get_if<GridQuantizer>(&q)) return g->quantize(m);
  return std::get<PhaseQuantizer>(q).quantize(m);
}

MatrixXc cell_center(const Quantizer& q, const CellId& cell) {
  if (const auto* g = std::get_if<GridQuantizer>(&q)) return g->center(cell);
  return std::get<PhaseQuantizer>(q).center(cell);
}

CellId cell_image_under_f(const CellId& cell, int pairs) {
  return permute_cell(cell, pairs, true);
}

CellId cell_preimage_under_f(const CellId& cell, int pairs) {
  return permute_cell(cell, pairs, false);
}

IndexSets build_index_sets(const Quantizer& q,
                           const std::vector<MatrixXc>& seq) {
  IndexSets sets;
  std::int64_t t = 0;
  for (const auto& m : seq) {
    ++t;  // 1-based time indices
    if (auto cell = quantize(q, m)) sets.by_cell[std::move(*cell)].push_back(t);
  }
  return sets;
}

std::vector<std::pair<std::int64_t, std::int64_t>> match_pairs(
    const IndexSets& first, const IndexSets& second, int pairs) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& [cell, t1] : first.by_cell) {
    const auto it = second.by_cell.find(cell_image_under_f(cell, pairs));
    if (it == second.by_cell.end()) continue;
    const auto& t2 = it->second;
    const std::size_t k = std::min(t1.size(), t2.size());
    for (std::size_t j = 0; j < k; ++j) out.emplace_back(t1[j], t2[j]);
  }
  return out;
}

Schedule default_schedule(double n_b, int pairs) {
  if (!(n_b >= 2.0))
    throw std::invalid_argument("default_schedule: n_b must be >= 2");
  if (pairs < 1)
    throw std::invalid_argument("default_schedule: pairs must be >= 1");
  Schedule s;
  s.delta = std::pow(n_b, -1.0 / (96.0 * pairs));
  s.n = std::max(1, static_cast<int>(
                        std::llround(std::pow(n_b, 1.0 / (48.0 * pairs)))));
  s.tolerance = std::pow(n_b, -1.0 / 3.0);
  return s;
}

}  // namespace ein
