#pragma once

#include <accx/types.hpp>

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include <omp.h>

namespace accx {

/// Run fn(worker) for every worker in [0, workers). Returns after all
/// workers finished, which is the bulk-synchronous barrier.
template <class Fn>
void parallel_for_workers(unsigned workers, Fn&& fn) {
  if (workers <= 1) {
    fn(0u);
    return;
  }
#pragma omp parallel for schedule(static, 1) num_threads(workers)
  for (int w = 0; w < static_cast<int>(workers); ++w) fn(static_cast<unsigned>(w));
}

/// Contiguous vertex ranges, one per worker.
class VertexPartition {
 public:
  VertexPartition() = default;

  /// Equal-size ranges; the last worker takes the remainder.
  static VertexPartition equal(std::uint64_t n, unsigned workers) {
    VertexPartition p;
    workers = std::max(1u, workers);
    p.base_ = n / workers;
    p.bounds_.resize(workers + 1);
    for (unsigned w = 0; w < workers; ++w) p.bounds_[w] = w * p.base_;
    p.bounds_[workers] = n;
    p.uniform_ = true;
    return p;
  }

  /// Ranges holding roughly equal numbers of edges according to offsets.
  static VertexPartition balanced(std::span<const EdgeId> offsets, unsigned workers) {
    VertexPartition p;
    workers = std::max(1u, workers);
    const std::uint64_t n = offsets.empty() ? 0 : offsets.size() - 1;
    const std::uint64_t m = n ? offsets[n] : 0;
    p.bounds_.resize(workers + 1);
    p.bounds_[0] = 0;
    for (unsigned w = 1; w < workers; ++w) {
      // weight vertices by edges + 1 so edgeless ranges still split
      const auto target = (m + n) * w / workers;
      std::uint64_t lo = p.bounds_[w - 1], hi = n;
      while (lo < hi) {
        const auto mid = (lo + hi) / 2;
        if (offsets[mid] + mid < target) lo = mid + 1;
        else hi = mid;
      }
      p.bounds_[w] = lo;
    }
    p.bounds_[workers] = n;
    return p;
  }

  unsigned parts() const noexcept { return static_cast<unsigned>(bounds_.size() - 1); }
  std::uint64_t begin(unsigned w) const noexcept { return bounds_[w]; }
  std::uint64_t end(unsigned w) const noexcept { return bounds_[w + 1]; }

  unsigned owner(std::uint64_t v) const noexcept {
    if (uniform_) {
      if (base_ == 0) return parts() - 1;
      return static_cast<unsigned>(std::min<std::uint64_t>(v / base_, parts() - 1));
    }
    const auto it = std::upper_bound(bounds_.begin(), bounds_.end() - 1, v);
    return static_cast<unsigned>(it - bounds_.begin() - 1);
  }

 private:
  std::vector<std::uint64_t> bounds_{0, 0};
  std::uint64_t base_ = 0;
  bool uniform_ = false;
};

}  // namespace accx
