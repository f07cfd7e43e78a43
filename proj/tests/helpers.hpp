#pragma once

#include <accx/graph.hpp>

#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace accx::testing {

inline CsrGraph from_text(const std::string& text, bool directed, bool reverse = false) {
  std::istringstream in(text);
  return build_csr(load_edge_list(in, directed), reverse);
}

inline CsrGraph path_graph(VertexId n, bool directed) {
  std::string s;
  for (VertexId v = 0; v + 1 < n; ++v) s += std::to_string(v) + " " + std::to_string(v + 1) + "\n";
  return from_text(s, directed, directed);
}

inline CsrGraph star_graph(VertexId leaves) {
  std::string s;
  for (VertexId v = 1; v <= leaves; ++v) s += "0 " + std::to_string(v) + "\n";
  return from_text(s, false);
}

// a..i = 0..8
enum Sample : VertexId { a, b, c, d, e, f, g, h, i };

inline CsrGraph sample_graph() {
  return from_text(
      "0 1 5\n0 3 1\n3 2 1\n3 4 1\n2 1 1\n2 5 3\n4 5 1\n4 6 2\n4 7 2\n4 8 3\n", false);
}

/// G(n, m) with unit weights.
inline CsrGraph random_graph(std::uint64_t n, std::uint64_t m, std::uint64_t seed, bool directed = false) {
  return build_csr(generate_uniform(n, m, seed, directed), directed);
}

inline CsrGraph random_weighted(std::uint64_t n, std::uint64_t m, std::uint64_t seed, bool directed = false,
                                double lo = 1, double hi = 11) {
  return generate_weights(random_graph(n, m, seed, directed), seed * 7 + 1, lo, hi, WeightKind::integer);
}

}  // namespace accx::testing
