#pragma once

// Sequential oracles used by --verify and the tests.

#include <accx/algorithms.hpp>
#include <accx/graph.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace accx::reference {

/// Queue BFS.
std::vector<std::uint32_t> bfs(const CsrGraph& g, VertexId source);

/// Binary-heap Dijkstra.
std::vector<double> dijkstra(const CsrGraph& g, VertexId source);

struct Peeling {
  std::vector<std::uint8_t> alive;
  std::vector<std::uint64_t> count;  // alive-neighbor arcs of alive vertices
};

/// Repeatedly remove a vertex with fewer than k remaining arcs.
Peeling kcore(const CsrGraph& g, std::uint64_t k);

/// Jacobi iteration of r = (1-d) + d * A r until the L1 step is below tol.
std::vector<double> pagerank(const CsrGraph& g, double damping, double tol = 1e-13,
                             std::uint32_t max_iterations = 100000);

/// The BP recurrence, one synchronous sweep per iteration, folding
/// in-neighbors in ascending source order.
std::vector<double> belief_propagation(const CsrGraph& g, std::span<const double> priors, std::uint32_t iterations);

struct Verdict {
  bool pass = true;
  std::optional<VertexId> first_divergent;
  double error = 0.0;  // max abs (or L1 for pagerank) difference
  std::string detail;
};

Verdict compare_exact(std::span<const std::uint32_t> got, std::span<const std::uint32_t> want);
Verdict compare_exact(std::span<const double> got, std::span<const double> want);
/// L1 norm against tolerance; first_divergent is the largest single deviation.
Verdict compare_l1(std::span<const double> got, std::span<const double> want, double tol);
/// Max-norm against tolerance.
Verdict compare_linf(std::span<const double> got, std::span<const double> want, double tol);
/// Alive sets equal and, for alive vertices, counters equal.
Verdict compare_kcore(std::span<const KCoreMeta> got, const Peeling& want);

}  // namespace accx::reference
