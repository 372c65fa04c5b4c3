#include "ein/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "ein/gaps.hpp"
#include "ein/icgap.hpp"
#include "ein/neutralization.hpp"
#include "ein/pairing.hpp"
#include "ein/rates.hpp"

namespace ein {
namespace {

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

// Per-suite allocator of verify-local stream ids so every check draws its
// own sequence for a given seed.
class StreamAlloc {
 public:
  explicit StreamAlloc(std::uint64_t seed) : seed_(seed) {}
  RngStream next() { return RngStream(seed_, substream(streams::verify, k_++)); }

 private:
  std::uint64_t seed_;
  std::uint64_t k_ = 0;
};

std::map<CellId, double> empirical_freq(const Quantizer& q,
                                        const FadingModel& model,
                                        Eigen::Index rows, Eigen::Index cols,
                                        std::size_t n, RngStream& s) {
  std::map<CellId, double> freq;
  for (std::size_t i = 0; i < n; ++i) {
    const MatrixXc m = sample_matrix(model, rows, cols, s);
    if (auto cell = quantize(q, m)) freq[*cell] += 1.0;
  }
  for (auto& [cell, f] : freq) f /= static_cast<double>(n);
  return freq;
}

double sup_deviation(const std::map<CellId, double>& a,
                     const std::map<CellId, double>& b) {
  double sup = 0.0;
  for (const auto& [cell, fa] : a) {
    const auto it = b.find(cell);
    sup = std::max(sup, std::abs(fa - (it == b.end() ? 0.0 : it->second)));
  }
  for (const auto& [cell, fb] : b)
    if (!a.contains(cell)) sup = std::max(sup, fb);
  return sup;
}

// ---- lemmas suite ----------------------------------------------------------

CheckResult check_commutation_grid(StreamAlloc& alloc) {
  CheckResult r{"cell map commutes with grid quantization", true, ""};
  const auto model = FadingModel::rayleigh();
  std::size_t checked = 0, mismatches = 0, range_splits = 0;
  for (const int pairs : {1, 2}) {
    const GridQuantizer q1(0.7, 2, 2 * pairs, 2);
    const GridQuantizer q2(0.7, 2, 2, 2 * pairs);
    auto s = alloc.next();
    for (int i = 0; i < 10000; ++i) {
      const MatrixXc h = sample_matrix(model, 2 * pairs, 2, s);
      const auto c1 = q1.quantize(h);
      const auto c2 = q2.quantize(f_map(h, pairs));
      if (c1.has_value() != c2.has_value()) {
        ++range_splits;  // entry permutation cannot change in-range status
        continue;
      }
      if (!c1) continue;
      ++checked;
      if (cell_image_under_f(*c1, pairs) != *c2 ||
          cell_preimage_under_f(*c2, pairs) != *c1)
        ++mismatches;
    }
  }
  r.pass = mismatches == 0 && range_splits == 0 && checked > 0;
  r.detail = fmt("%zu in-range draws, %zu mismatches, %zu range splits",
                 checked, mismatches, range_splits);
  return r;
}

CheckResult check_commutation_phase(StreamAlloc& alloc) {
  CheckResult r{"cell map commutes with phase quantization", true, ""};
  const auto model = FadingModel::uniform_phase();
  std::size_t mismatches = 0, total = 0;
  for (const int pairs : {1, 2})
    for (const int bins : {3, 8}) {
      const PhaseQuantizer q1(bins, 2 * pairs, 2);
      const PhaseQuantizer q2(bins, 2, 2 * pairs);
      auto s = alloc.next();
      for (int i = 0; i < 10000; ++i) {
        const MatrixXc h = sample_matrix(model, 2 * pairs, 2, s);
        ++total;
        if (cell_image_under_f(q1.quantize(h), pairs) !=
            q2.quantize(f_map(h, pairs)))
          ++mismatches;
      }
    }
  r.pass = mismatches == 0;
  r.detail = fmt("%zu draws, %zu mismatches", total, mismatches);
  return r;
}

CheckResult check_paired_cell_frequencies(StreamAlloc& alloc) {
  CheckResult r{"paired cells are equally likely across hops", true, ""};
  const std::size_t n = 100000;
  double worst = 0.0;

  // Fixed phase cell: all entries in bin 0.
  {
    const auto model = FadingModel::uniform_phase();
    const PhaseQuantizer q1(4, 2, 2);
    const PhaseQuantizer q2(4, 2, 2);
    CellId q0;
    q0.coords = {0, 0, 0, 0};
    const CellId q0_img = cell_image_under_f(q0, 1);
    auto s1 = alloc.next();
    auto s2 = alloc.next();
    std::size_t c1 = 0, c2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (q1.quantize(sample_matrix(model, 2, 2, s1)) == q0) ++c1;
      if (q2.quantize(sample_matrix(model, 2, 2, s2)) == q0_img) ++c2;
    }
    const double p1 = static_cast<double>(c1) / n;
    const double p2 = static_cast<double>(c2) / n;
    const double pbar = (p1 + p2) / 2.0;
    const double se = std::sqrt(pbar * (1.0 - pbar) * 2.0 / n);
    worst = std::max(worst, std::abs(p1 - p2) / se);
    if (std::abs(p1 - p2) > 3.0 * se) r.pass = false;
  }

  // Fixed grid cell: all entries in the cell around the origin.
  {
    const auto model = FadingModel::rayleigh();
    const GridQuantizer q1(0.7, 2, 2, 2);
    const GridQuantizer q2(0.7, 2, 2, 2);
    CellId q0;
    q0.coords.assign(8, 0);
    const CellId q0_img = cell_image_under_f(q0, 1);
    auto s1 = alloc.next();
    auto s2 = alloc.next();
    std::size_t c1 = 0, c2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (q1.quantize(sample_matrix(model, 2, 2, s1)) == q0) ++c1;
      if (q2.quantize(sample_matrix(model, 2, 2, s2)) == q0_img) ++c2;
    }
    const double p1 = static_cast<double>(c1) / n;
    const double p2 = static_cast<double>(c2) / n;
    const double pbar = (p1 + p2) / 2.0;
    const double se = std::sqrt(pbar * (1.0 - pbar) * 2.0 / n);
    worst = std::max(worst, std::abs(p1 - p2) / se);
    if (std::abs(p1 - p2) > 3.0 * se) r.pass = false;
  }

  r.detail = fmt("worst |p1 - p2| = %.2f standard errors (limit 3)", worst);
  return r;
}

CheckResult check_concentration(StreamAlloc& alloc, bool grid) {
  CheckResult r{grid ? "index counts concentrate over cells (grid)"
                     : "index counts concentrate over cells (phase)",
                true, ""};
  const FadingModel model =
      grid ? FadingModel::rayleigh() : FadingModel::uniform_phase();
  Quantizer q1 = grid ? Quantizer(GridQuantizer(1.0, 1, 2, 2))
                      : Quantizer(PhaseQuantizer(2, 2, 2));
  Quantizer q2 = grid ? Quantizer(GridQuantizer(1.0, 1, 2, 2))
                      : Quantizer(PhaseQuantizer(2, 2, 2));
  const std::size_t n_b = grid ? 100000 : 20000;
  const double delta = grid ? 0.3 : 0.05;
  const int reps = grid ? 50 : 100;
  const double cells = grid ? std::get<GridQuantizer>(q1).cell_count() * 2.0
                            : std::get<PhaseQuantizer>(q1).cell_count() * 2.0;
  // Success probability promised for the two-hop sup-deviation event.
  const double promised =
      std::max(0.0, 1.0 - cells / (2.0 * static_cast<double>(n_b) * delta * delta));

  auto s = alloc.next();
  const auto oracle1 = empirical_freq(q1, model, 2, 2, 400000, s);
  const auto oracle2 = empirical_freq(q2, model, 2, 2, 400000, s);

  int successes = 0;
  for (int rep = 0; rep < reps; ++rep) {
    auto sr = alloc.next();
    const auto f1 = empirical_freq(q1, model, 2, 2, n_b, sr);
    const auto f2 = empirical_freq(q2, model, 2, 2, n_b, sr);
    if (sup_deviation(f1, oracle1) <= delta &&
        sup_deviation(f2, oracle2) <= delta)
      ++successes;
  }
  const double rate = static_cast<double>(successes) / reps;
  r.pass = rate >= promised;
  r.detail = fmt("success rate %.2f vs promised %.2f (n_b=%zu, tol=%.2f)",
                 rate, promised, n_b, delta);
  return r;
}

CheckResult check_log_cos(std::uint64_t seed, int threads) {
  CheckResult r{"log-cosine mean identity", true, ""};
  double worst = 0.0;
  for (const double x : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto mc = expected_log_cos_mc(x, 200000, seed, threads);
    const double closed = expected_log_cos_closed(x);
    const double tol = 3.0 * mc.std_error + 1e-12;
    worst = std::max(worst, std::abs(mc.mean - closed) / tol);
    if (std::abs(mc.mean - closed) > tol) r.pass = false;
  }
  r.detail = fmt("worst deviation %.2f of the 3-sigma allowance", worst);
  return r;
}

CheckResult check_sum_concentration(std::uint64_t seed, int threads) {
  CheckResult r{"sum concentration lower bound", true, ""};
  const auto model = FadingModel::uniform_phase();
  const double mean = 4.0 / M_PI;  // E|det| of a unit-modulus pair block
  const double m2 = 2.0;
  const double eps = 0.3;
  double slack = 1e300;
  for (const int m : {1, 2, 4, 8, 16, 32, 64})
    for (const double c : {0.1, 1.0, 10.0}) {
      const auto mc = mc_mean(
          10000, seed, streams::sum_concentration,
          [&](RngStream& s) {
            double sum = 0.0;
            for (int k = 0; k < m; ++k) {
              Matrix2c b;
              b << model.draw(s), model.draw(s), model.draw(s),
                  model.draw(s);
              sum += std::abs(det2(b));
            }
            return std::log2(1.0 + c * sum * sum);
          },
          threads);
      const double bound =
          std::log2(1.0 + c * m * m * mean * mean) -
          concentration_penalty(c, m, mean, m2, eps);
      slack = std::min(slack, mc.mean + 3.0 * mc.std_error - bound);
      if (mc.mean + 3.0 * mc.std_error < bound) r.pass = false;
    }
  r.detail = fmt("minimum slack %.3f bits (must be >= 0)", slack);
  return r;
}

// ---- neutralization suite -------------------------------------------------

CheckResult check_cancellation(StreamAlloc& alloc) {
  CheckResult r{"matched second hop neutralizes cross terms", true, ""};
  const auto model = FadingModel::rayleigh();
  double worst_off = 0.0, worst_diag = 0.0;
  for (const int pairs : {1, 2, 3}) {
    auto s = alloc.next();
    for (int i = 0; i < 10000; ++i) {
      const MatrixXc h = sample_matrix(model, 2 * pairs, 2, s);
      RelayGains gains = relay_gain_matrix(h, 1.0);
      const Matrix2c eff = effective_channel(f_map(h, pairs), gains, h);
      double det_sum = 0.0;
      for (int m = 0; m < pairs; ++m)
        det_sum += std::abs(det2(h.block<2, 2>(2 * m, 0)));
      const double scale = gains.gamma() * det_sum;
      worst_off = std::max(
          {worst_off, std::abs(eff(0, 1)), std::abs(eff(1, 0))});
      worst_diag = std::max(
          {worst_diag, std::abs(eff(0, 0) - scale) / (1.0 + scale),
           std::abs(eff(1, 1) + scale) / (1.0 + scale)});
    }
  }
  r.pass = worst_off < 1e-12 && worst_diag < 1e-10;
  r.detail = fmt("max off-diagonal %.2e (limit 1e-12), max relative "
                 "diagonal error %.2e (limit 1e-10)",
                 worst_off, worst_diag);
  return r;
}

CheckResult check_relay_power(std::uint64_t seed, int threads) {
  CheckResult r{"relay transmit power stays within budget", true, ""};
  const auto model = FadingModel::rayleigh();
  const int relays = 6;
  double worst = -1e300;
  for (const double p : {1.0, 10.0}) {
    const double g2 = gamma_factor(p) * gamma_factor(p);
    const auto est = mc_mean_multi(
        200000, seed, streams::relay_power, static_cast<std::size_t>(relays),
        [&](RngStream& s, std::span<double> out) {
          const MatrixXc h = sample_matrix(model, relays, 2, s);
          for (int j = 0; j < relays; ++j)
            out[static_cast<std::size_t>(j)] =
                g2 * (p * h.row(j).squaredNorm() + 1.0);
        },
        threads);
    for (const auto& e : est) {
      worst = std::max(worst, (e.mean - p) / e.std_error);
      if (e.mean > p + 3.0 * e.std_error) r.pass = false;
    }
  }
  r.detail =
      fmt("worst excess %.2f standard errors above budget (limit 3)", worst);
  return r;
}

CheckResult check_sinr_limit(StreamAlloc& alloc) {
  CheckResult r{"exact SINR approaches the ideal limit as mismatch shrinks",
                true, ""};
  const auto model = FadingModel::rayleigh();
  const double p = 10.0;
  auto s = alloc.next();
  double worst_zero = 0.0;
  bool shrinks = true;
  for (int i = 0; i < 100; ++i) {
    const MatrixXc h = sample_matrix(model, 2, 2, s);
    if (std::abs(det2(h.block<2, 2>(0, 0))) <= 1e-3) continue;
    const SecondHopMatrix fh = f_map(h, 1);
    const MatrixXc dir = sample_matrix(model, 2, 2, s);
    const double ideal1 = asymptotic_sinr(h, p, 1);
    const double ideal2 = asymptotic_sinr(h, p, 2);

    const SinrPair at0 = sinr_exact(h, fh, p);
    worst_zero = std::max({worst_zero,
                           std::abs(at0.sinr1 - ideal1) / (1.0 + ideal1),
                           std::abs(at0.sinr2 - ideal2) / (1.0 + ideal2)});

    double prev = 1e300;
    for (const double eps : {1e-2, 1e-4, 1e-6}) {
      const SinrPair sp = sinr_exact(h, fh + eps * dir, p);
      const double dev = std::abs(sp.sinr1 - ideal1) + std::abs(sp.sinr2 - ideal2);
      if (dev > prev / 10.0) shrinks = false;
      prev = dev;
    }
  }
  r.pass = worst_zero < 1e-12 && shrinks;
  r.detail = fmt("relative deviation at zero mismatch %.2e (limit 1e-12); "
                 "deviation shrinks with mismatch: %s",
                 worst_zero, shrinks ? "yes" : "no");
  return r;
}

// ---- constants suite ------------------------------------------------------

CheckResult check_constant(const char* name, double exact,
                           const RateEstimate& mc, double extra_tol = 0.0) {
  CheckResult r{name, true, ""};
  const double tol = 3.0 * mc.std_error + extra_tol;
  r.pass = std::abs(mc.mean - exact) <= tol;
  r.detail = fmt("estimate %.6f vs %.6f (tolerance %.2e)", mc.mean, exact, tol);
  return r;
}

CheckResult check_ratio_law(StreamAlloc& alloc) {
  CheckResult r{"link-gain ratio follows the x/(1+x) law", true, ""};
  const auto model = FadingModel::rayleigh();
  const std::size_t n = 100000;
  std::vector<double> ratio(n);
  auto s = alloc.next();
  for (auto& x : ratio) {
    const double h1 = std::norm(model.draw(s));
    const double h2 = std::norm(model.draw(s));
    x = h1 / h2;
  }
  std::sort(ratio.begin(), ratio.end());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double cdf = ratio[i] / (ratio[i] + 1.0);
    d = std::max(d, std::abs(cdf - static_cast<double>(i + 1) / n));
    d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
  }
  // Kolmogorov-Smirnov at the 1% level: sqrt(-ln(0.005)/2) / sqrt(n).
  const double critical = std::sqrt(-std::log(0.005) / 2.0) / std::sqrt(n);
  r.pass = d <= critical;
  r.detail = fmt("KS statistic %.5f vs critical %.5f", d, critical);
  return r;
}

std::vector<CheckResult> lemmas_suite(std::uint64_t seed, int threads) {
  StreamAlloc alloc(seed);
  std::vector<CheckResult> out;
  out.push_back(check_commutation_grid(alloc));
  out.push_back(check_commutation_phase(alloc));
  out.push_back(check_paired_cell_frequencies(alloc));
  out.push_back(check_concentration(alloc, false));
  out.push_back(check_concentration(alloc, true));
  out.push_back(check_log_cos(seed, threads));
  out.push_back(check_sum_concentration(seed, threads));
  return out;
}

std::vector<CheckResult> neutralization_suite(std::uint64_t seed,
                                              int threads) {
  StreamAlloc alloc(seed);
  std::vector<CheckResult> out;
  out.push_back(check_cancellation(alloc));
  out.push_back(check_relay_power(seed, threads));
  out.push_back(check_sinr_limit(alloc));
  return out;
}

std::vector<CheckResult> constants_suite(std::uint64_t seed, int threads) {
  StreamAlloc alloc(seed);
  std::vector<CheckResult> out;
  const auto rayleigh = FadingModel::rayleigh();
  const auto uniform = FadingModel::uniform_phase();
  const std::size_t n = 1000000;

  out.push_back(check_constant("mean pair-block |det|, Rayleigh",
                               3.0 * M_PI / 8.0,
                               expected_abs_det_mc(rayleigh, n, seed, threads)));
  out.push_back(check_constant("mean pair-block |det|, uniform phase",
                               4.0 / M_PI,
                               expected_abs_det_mc(uniform, n, seed, threads)));
  out.push_back(
      check_constant("mean squared pair-block |det|, Rayleigh", 2.0,
                     expected_abs_det_sq_mc(rayleigh, n, seed, threads)));
  out.push_back(
      check_constant("mean squared pair-block |det|, uniform phase", 2.0,
                     expected_abs_det_sq_mc(uniform, n, seed, threads)));
  out.push_back(check_constant("alignment gap bound, Rayleigh",
                               0.5 * std::log2(6.0),
                               ia_gap_bound_mc(rayleigh, n, seed, threads)));
  out.push_back(check_constant("alignment gap bound, uniform phase",
                               0.5 * std::log2(1.5),
                               ia_gap_bound_mc(uniform, n, seed, threads),
                               1e-12));
  out.push_back(check_constant(
      "mean |log2 ratio| of independent link gains", 2.0,
      mc_mean(
          n, seed, streams::ratio_mean,
          [&](RngStream& s) {
            const double h1 = std::norm(rayleigh.draw(s));
            const double h2 = std::norm(rayleigh.draw(s));
            return std::abs(std::log2(h1 / h2));
          },
          threads)));
  out.push_back(check_ratio_law(alloc));
  return out;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"lemmas", "neutralization",
                                              "constants", "all"};
  return names;
}

std::vector<CheckResult> verify_suite(std::string_view suite,
                                      std::uint64_t seed, int threads) {
  if (suite == "lemmas") return lemmas_suite(seed, threads);
  if (suite == "neutralization") return neutralization_suite(seed, threads);
  if (suite == "constants") return constants_suite(seed, threads);
  if (suite == "all") {
    auto out = lemmas_suite(seed, threads);
    auto b = neutralization_suite(seed, threads);
    auto c = constants_suite(seed, threads);
    out.insert(out.end(), b.begin(), b.end());
    out.insert(out.end(), c.begin(), c.end());
    return out;
  }
  throw std::invalid_argument("unknown verify suite: " + std::string(suite));
}

}  // namespace ein
