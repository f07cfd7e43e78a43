#pragma once

#include <accx/task_manager.hpp>
#include <accx/types.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace accx {

/// Edge range [begin, end) of vertex's out-edges, as absolute CSR positions.
struct Task {
  VertexId vertex = 0;
  EdgeId begin = 0;
  EdgeId end = 0;

  std::uint64_t edges() const noexcept { return end - begin; }
  friend bool operator==(const Task&, const Task&) = default;
};

struct WorkAssignment {
  std::vector<std::vector<Task>> per_worker;
  std::vector<std::uint64_t> loads;  // assigned edges per worker

  std::size_t task_count() const noexcept;
  std::uint64_t max_load() const noexcept;
  double mean_load() const noexcept;
};

/// Small vertices become one task each; medium vertices are cut into chunks
/// of small_limit edges and large ones into chunks of large_limit edges.
/// Tasks are split across workers by a prefix scan over their edge counts,
/// so no worker exceeds the mean by more than one chunk.
WorkAssignment schedule_tasks(const ActiveLists& lists, std::span<const EdgeId> offsets, unsigned worker_count,
                              const Separators& seps = {});

/// Beamer-style switch: pull iff the frontier's out-edges exceed edge_count / alpha.
Direction direction_select(std::uint64_t frontier_out_edges, std::uint64_t edge_count, double alpha);

}  // namespace accx
