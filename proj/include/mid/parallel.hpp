#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mid {

/// Bivariate running moments (Welford update, Chan et al. merge). `y` carries
/// the baseline of a ratio; univariate users can ignore it.
struct PairMoments {
  std::uint64_t n = 0;
  double mean_x = 0.0;
  double mean_y = 0.0;
  double m2x = 0.0;
  double m2y = 0.0;
  double cxy = 0.0;

  void add(double x, double y) {
    ++n;
    const double inv = 1.0 / static_cast<double>(n);
    const double dx = x - mean_x;
    const double dy = y - mean_y;
    mean_x += dx * inv;
    mean_y += dy * inv;
    m2x += dx * (x - mean_x);
    m2y += dy * (y - mean_y);
    cxy += dx * (y - mean_y);
  }

  void merge(const PairMoments& other) {
    if (other.n == 0) return;
    if (n == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(n);
    const double nb = static_cast<double>(other.n);
    const double total = na + nb;
    const double dx = other.mean_x - mean_x;
    const double dy = other.mean_y - mean_y;
    const double w = na * nb / total;
    mean_x += dx * (nb / total);
    mean_y += dy * (nb / total);
    m2x += other.m2x + dx * dx * w;
    m2y += other.m2y + dy * dy * w;
    cxy += other.cxy + dx * dy * w;
    n += other.n;
  }
};

/// One PairMoments per curve point.
struct MomentSet {
  std::vector<PairMoments> items;

  explicit MomentSet(std::size_t size = 0) : items(size) {}
  void merge(const MomentSet& other) {
    for (std::size_t i = 0; i < items.size(); ++i) items[i].merge(other.items[i]);
  }
};

/// Number of consecutive sample indices reduced together. Fixed so the
/// summation tree depends only on n, never on the worker count.
inline constexpr std::uint64_t kReductionBlock = 512;

inline unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Calls `per_sample(i, acc)` for every i in [0, n) and merges the per-block
/// accumulators in block order. The result is bit-identical for any number of
/// workers; `workers == 0` means one per hardware thread.
template <class Acc, class SampleFn>
Acc reduce_samples(std::uint64_t n, unsigned workers, const Acc& zero, SampleFn&& per_sample) {
  const std::uint64_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<Acc> partial(blocks, zero);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    try {
      for (std::uint64_t b = next++; b < blocks; b = next++) {
        const std::uint64_t begin = b * kReductionBlock;
        const std::uint64_t end = std::min(n, begin + kReductionBlock);
        for (std::uint64_t i = begin; i < end; ++i) per_sample(i, partial[b]);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = blocks;
    }
  };

  const unsigned threads = static_cast<unsigned>(
      std::min<std::uint64_t>(resolve_workers(workers), std::max<std::uint64_t>(blocks, 1)));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  Acc total = zero;
  for (const Acc& p : partial) total.merge(p);
  return total;
}

}  // namespace mid
