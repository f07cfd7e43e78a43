#pragma once

#include <accx/types.hpp>

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace accx {

struct Edge {
  VertexId src = 0;
  VertexId dst = 0;
  Weight weight = 1.0f;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Raw edges as read from a source. For undirected lists each entry is one
/// logical edge; it is materialized in both directions by build_csr.
struct EdgeList {
  bool directed = true;
  bool weighted = false;
  std::uint64_t vertex_count = 0;
  std::vector<Edge> edges;
};

/// Parse "src dst [weight]" lines. '#' and '%' start comment lines.
/// vertex_count is inferred as 1 + max id. Throws ParseError.
EdgeList load_edge_list(std::istream& in, bool directed);
EdgeList load_edge_list_file(const std::string& path, bool directed);

/// Read-only view over a CSR vertex-offset array.
struct DegreeView {
  std::span<const EdgeId> offsets;

  std::uint64_t operator()(VertexId v) const noexcept { return offsets[v + 1] - offsets[v]; }
  std::size_t vertex_count() const noexcept { return offsets.empty() ? 0 : offsets.size() - 1; }
};

/// Compressed sparse row graph with optional transposed structure. Immutable
/// once built; safe for concurrent readers.
class CsrGraph {
 public:
  CsrGraph() = default;

  std::uint64_t vertex_count() const noexcept { return vertex_count_; }
  std::uint64_t edge_count() const noexcept { return out_neighbors_.size(); }
  bool directed() const noexcept { return directed_; }
  bool weighted() const noexcept { return weighted_; }
  bool has_reverse() const noexcept { return !in_offsets_.empty(); }
  /// In-edges are available either explicitly or through symmetry.
  bool has_in_edges() const noexcept { return !directed_ || has_reverse(); }

  std::uint64_t out_degree(VertexId v) const noexcept { return out_offsets_[v + 1] - out_offsets_[v]; }
  std::uint64_t in_degree(VertexId v) const noexcept {
    const auto& off = in_offsets_ref();
    return off[v + 1] - off[v];
  }

  std::span<const VertexId> out_neighbors(VertexId v) const noexcept {
    return {out_neighbors_.data() + out_offsets_[v], out_degree(v)};
  }
  std::span<const Weight> out_weights(VertexId v) const noexcept {
    return {out_weights_.data() + out_offsets_[v], out_degree(v)};
  }
  std::span<const VertexId> in_neighbors(VertexId v) const noexcept {
    const auto& off = in_offsets_ref();
    return {in_neighbors_ref().data() + off[v], off[v + 1] - off[v]};
  }
  std::span<const Weight> in_weights(VertexId v) const noexcept {
    const auto& off = in_offsets_ref();
    return {in_weights_ref().data() + off[v], off[v + 1] - off[v]};
  }

  const std::vector<EdgeId>& out_offsets() const noexcept { return out_offsets_; }
  const std::vector<VertexId>& out_neighbor_array() const noexcept { return out_neighbors_; }
  const std::vector<Weight>& out_weight_array() const noexcept { return out_weights_; }
  const std::vector<EdgeId>& in_offsets() const noexcept { return in_offsets_; }
  const std::vector<VertexId>& in_neighbor_array() const noexcept { return in_neighbors_; }
  const std::vector<Weight>& in_weight_array() const noexcept { return in_weights_; }

  DegreeView out_degrees() const noexcept { return {out_offsets_}; }

  /// Edge list in canonical (src, dst, weight) order, one entry per stored arc.
  std::vector<Edge> arcs() const;

  /// Copy with per-arc weights replaced (aligned with out_neighbor_array);
  /// the transposed weights are permuted to match.
  CsrGraph with_weights(std::span<const Weight> weights, bool weighted = true) const;
  /// Copy with transposed structure built (no-op when already present).
  CsrGraph with_reverse() const;

  friend bool operator==(const CsrGraph&, const CsrGraph&) = default;

  // Raw assembly used by the builders and the binary reader. Validates shape.
  static CsrGraph from_parts(std::uint64_t vertex_count, bool directed, bool weighted,
                             std::vector<EdgeId> out_offsets, std::vector<VertexId> out_neighbors,
                             std::vector<Weight> out_weights, std::vector<EdgeId> in_offsets = {},
                             std::vector<VertexId> in_neighbors = {},
                             std::vector<Weight> in_weights = {});

 private:
  const std::vector<EdgeId>& in_offsets_ref() const noexcept {
    return in_offsets_.empty() ? out_offsets_ : in_offsets_;
  }
  const std::vector<VertexId>& in_neighbors_ref() const noexcept {
    return in_offsets_.empty() ? out_neighbors_ : in_neighbors_;
  }
  const std::vector<Weight>& in_weights_ref() const noexcept {
    return in_offsets_.empty() ? out_weights_ : in_weights_;
  }
  void build_transpose();

  std::uint64_t vertex_count_ = 0;
  bool directed_ = true;
  bool weighted_ = false;
  std::vector<EdgeId> out_offsets_{0};
  std::vector<VertexId> out_neighbors_;
  std::vector<Weight> out_weights_;
  std::vector<EdgeId> in_offsets_;
  std::vector<VertexId> in_neighbors_;
  std::vector<Weight> in_weights_;
};

/// Canonical CSR: neighbors sorted by (dst, weight), duplicates and self-loops kept.
CsrGraph build_csr(const EdgeList& el, bool build_reverse);

enum class WeightKind { real, integer };

/// Seeded uniform weights in [lo, hi). Both directions of an undirected edge
/// share one weight. Integer kind draws whole numbers in [lo, hi).
CsrGraph generate_weights(const CsrGraph& g, std::uint64_t seed, double lo, double hi,
                          WeightKind kind = WeightKind::real);

// Binary persistence: "ACCX" | version | flags | V | E | arrays, all little-endian.
inline constexpr std::uint32_t kBinaryVersion = 1;
void write_binary(const CsrGraph& g, std::ostream& out);
CsrGraph read_binary(std::istream& in);
void write_binary_file(const CsrGraph& g, const std::string& path);
CsrGraph read_binary_file(const std::string& path);
/// True when the file starts with the binary magic.
bool is_binary_graph_file(const std::string& path);

// Desk-scale synthetic inputs.
EdgeList generate_rmat(unsigned scale, double edge_factor, std::uint64_t seed, bool directed,
                       double a = 0.57, double b = 0.19, double c = 0.19);
EdgeList generate_uniform(std::uint64_t vertex_count, std::uint64_t edge_count, std::uint64_t seed,
                          bool directed);

}  // namespace accx
