#include "ein/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace ein {
namespace {

// Trials per reduction block. Block boundaries are fixed by trial index, not
// by worker, which is what makes the reduction order deterministic.
constexpr std::size_t kBlock = 4096;

int resolve_threads(int threads, std::size_t trials) {
  if (threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw == 0 ? 1 : static_cast<int>(hw);
  }
  const std::size_t blocks = (trials + kBlock - 1) / kBlock;
  return static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(threads), blocks));
}

RateEstimate finish(double sum, double sum_sq, std::size_t n) {
  RateEstimate r;
  r.trials = n;
  r.mean = sum / static_cast<double>(n);
  if (n > 1) {
    const double nn = static_cast<double>(n);
    const double var = std::max(0.0, (sum_sq - nn * r.mean * r.mean) / (nn - 1.0));
    r.std_error = std::sqrt(var / nn);
  }
  return r;
}

}  // namespace

RateEstimate estimate_difference(const RateEstimate& a, const RateEstimate& b) {
  RateEstimate r;
  r.mean = a.mean - b.mean;
  r.std_error = std::hypot(a.std_error, b.std_error);
  r.trials = std::min(a.trials, b.trials);
  return r;
}

RateEstimate mc_mean(std::size_t trials, std::uint64_t seed,
                     std::uint64_t domain,
                     const std::function<double(RngStream&)>& per_trial,
                     int threads) {
  if (trials == 0) throw std::invalid_argument("mc_mean: trials must be >= 1");
  const auto multi = mc_mean_multi(
      trials, seed, domain, 1,
      [&](RngStream& s, std::span<double> out) { out[0] = per_trial(s); },
      threads);
  return multi[0];
}

std::vector<RateEstimate> mc_mean_multi(
    std::size_t trials, std::uint64_t seed, std::uint64_t domain,
    std::size_t dim,
    const std::function<void(RngStream&, std::span<double>)>& per_trial,
    int threads) {
  if (trials == 0)
    throw std::invalid_argument("mc_mean_multi: trials must be >= 1");
  if (dim == 0) throw std::invalid_argument("mc_mean_multi: dim must be >= 1");

  const std::size_t blocks = (trials + kBlock - 1) / kBlock;
  // Per-block partial sums, indexed by block so the final reduction does not
  // depend on which worker produced them.
  std::vector<double> block_sum(blocks * dim, 0.0);
  std::vector<double> block_sum_sq(blocks * dim, 0.0);

  const int workers = resolve_threads(threads, trials);
  std::atomic<std::size_t> next_block{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  auto work = [&]() {
    try {
      std::vector<double> value(dim);
      for (;;) {
        const std::size_t b = next_block.fetch_add(1);
        if (b >= blocks || failed.load(std::memory_order_relaxed)) return;
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(trials, lo + kBlock);
        double* sums = &block_sum[b * dim];
        double* sq = &block_sum_sq[b * dim];
        for (std::size_t t = lo; t < hi; ++t) {
          RngStream s(seed, substream(domain, t));
          per_trial(s, value);
          for (std::size_t d = 0; d < dim; ++d) {
            sums[d] += value[d];
            sq[d] += value[d] * value[d];
          }
        }
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<RateEstimate> out(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
      sum += block_sum[b * dim + d];
      sum_sq += block_sum_sq[b * dim + d];
    }
    out[d] = finish(sum, sum_sq, trials);
  }
  return out;
}

}  // namespace ein
