#pragma once

#include <accx/task_manager.hpp>
#include <accx/types.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace accx {

/// One executed iteration. `filter` and `overflow` describe how this
/// iteration's frontier was built.
struct IterationStats {
  std::uint32_t iteration = 0;
  Direction direction = Direction::push;
  FilterKind filter = FilterKind::online;
  bool overflow = false;
  bool all_active = false;
  std::size_t small = 0, medium = 0, large = 0;
  std::uint64_t active_vertices = 0;
  std::uint64_t active_edges = 0;
  std::uint64_t edges_examined = 0;
  std::uint64_t updated = 0;  // applies that reported a change
  std::uint64_t flagged = 0;  // changed and active for the next iteration
  double delta_l1 = 0.0;
  std::uint64_t buffer_entries = 0;
  double seconds = 0.0;
};

struct RunStats {
  std::vector<IterationStats> iterations;
  bool converged = false;
  double seconds = 0.0;
  std::uint64_t peak_buffer_entries = 0;
  std::uint64_t peak_active_edge_buffer = 0;  // batch path only

  std::vector<Direction> direction_trace() const;
  std::uint64_t edges_examined() const;
};

/// Direction rule reported alongside stats; the switching criterion is a stand-in.
inline constexpr const char* kDirectionHeuristic = "edge-ratio: pull iff frontier out-edges > |E|/alpha";

std::string stats_csv(const RunStats& stats);
std::string stats_json(const RunStats& stats, int indent = 2);

}  // namespace accx
