#include <accx/graph.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <string_view>

namespace accx {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

VertexId parse_vertex(std::string_view tok, std::size_t line) {
  std::uint64_t value = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec == std::errc::result_out_of_range) throw ParseError(line, "vertex id overflow");
  if (ec != std::errc() || ptr != end) throw ParseError(line, "malformed vertex id '" + std::string(tok) + "'");
  if (value >= kInvalidVertex) throw ParseError(line, "vertex id overflow");
  return static_cast<VertexId>(value);
}

Weight parse_weight(std::string_view tok, std::size_t line) {
  double value = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ParseError(line, "malformed weight '" + std::string(tok) + "'");
  if (!std::isfinite(value)) throw ParseError(line, "non-finite weight");
  if (value < 0) throw ParseError(line, "negative weight");
  return static_cast<Weight>(value);
}

void sort_ranges(const std::vector<EdgeId>& offsets, std::vector<VertexId>& nbrs,
                 std::vector<Weight>& weights) {
  std::vector<std::pair<VertexId, Weight>> scratch;
  for (std::size_t v = 0; v + 1 < offsets.size(); ++v) {
    const auto b = offsets[v], e = offsets[v + 1];
    if (e - b < 2) continue;
    scratch.clear();
    for (auto i = b; i < e; ++i) scratch.emplace_back(nbrs[i], weights[i]);
    std::sort(scratch.begin(), scratch.end());
    for (auto i = b; i < e; ++i) {
      nbrs[i] = scratch[i - b].first;
      weights[i] = scratch[i - b].second;
    }
  }
}

void check_offsets(const std::vector<EdgeId>& off, std::uint64_t n, std::uint64_t m, const char* what) {
  if (off.size() != n + 1) throw FormatError(std::string(what) + ": offset array has wrong length");
  if (off.front() != 0) throw FormatError(std::string(what) + ": first offset is not zero");
  if (off.back() != m) throw FormatError(std::string(what) + ": last offset does not match edge count");
  for (std::size_t i = 1; i < off.size(); ++i)
    if (off[i] < off[i - 1]) throw FormatError(std::string(what) + ": offsets decrease");
}

}  // namespace

EdgeList load_edge_list(std::istream& in, bool directed) {
  EdgeList el;
  el.directed = directed;
  std::string raw;
  std::size_t line = 0;
  std::uint64_t max_id = 0;
  bool any = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto s = trim(raw);
    if (s.empty() || s.front() == '#' || s.front() == '%') continue;
    const auto tok = split_ws(s);
    if (tok.size() < 2 || tok.size() > 3)
      throw ParseError(line, "expected 'src dst [weight]', got " + std::to_string(tok.size()) + " fields");
    Edge e;
    e.src = parse_vertex(tok[0], line);
    e.dst = parse_vertex(tok[1], line);
    if (tok.size() == 3) {
      e.weight = parse_weight(tok[2], line);
      el.weighted = true;
    }
    max_id = std::max<std::uint64_t>(max_id, std::max(e.src, e.dst));
    any = true;
    el.edges.push_back(e);
  }
  el.vertex_count = any ? max_id + 1 : 0;
  return el;
}

EdgeList load_edge_list_file(const std::string& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return load_edge_list(in, directed);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), path);
  }
}

std::vector<Edge> CsrGraph::arcs() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (VertexId v = 0; v < vertex_count_; ++v)
    for (auto i = out_offsets_[v]; i < out_offsets_[v + 1]; ++i)
      out.push_back({v, out_neighbors_[i], out_weights_[i]});
  return out;
}

void CsrGraph::build_transpose() {
  const auto n = vertex_count_;
  const auto m = edge_count();
  in_offsets_.assign(n + 1, 0);
  for (auto u : out_neighbors_) ++in_offsets_[u + 1];
  std::partial_sum(in_offsets_.begin(), in_offsets_.end(), in_offsets_.begin());
  in_neighbors_.resize(m);
  in_weights_.resize(m);
  std::vector<EdgeId> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
  for (VertexId v = 0; v < n; ++v) {
    for (auto i = out_offsets_[v]; i < out_offsets_[v + 1]; ++i) {
      const auto slot = cursor[out_neighbors_[i]]++;
      in_neighbors_[slot] = v;
      in_weights_[slot] = out_weights_[i];
    }
  }
}

CsrGraph CsrGraph::with_weights(std::span<const Weight> weights, bool weighted) const {
  if (weights.size() != edge_count()) throw InvalidArgument("weight array length differs from edge count");
  CsrGraph g = *this;
  g.out_weights_.assign(weights.begin(), weights.end());
  g.weighted_ = weighted;
  if (g.has_reverse()) g.build_transpose();
  return g;
}

CsrGraph CsrGraph::with_reverse() const {
  CsrGraph g = *this;
  if (!g.has_reverse()) g.build_transpose();
  return g;
}

CsrGraph CsrGraph::from_parts(std::uint64_t vertex_count, bool directed, bool weighted,
                              std::vector<EdgeId> out_offsets, std::vector<VertexId> out_neighbors,
                              std::vector<Weight> out_weights, std::vector<EdgeId> in_offsets,
                              std::vector<VertexId> in_neighbors, std::vector<Weight> in_weights) {
  if (vertex_count > std::uint64_t{kInvalidVertex}) throw FormatError("vertex count exceeds 32-bit id space");
  const auto m = out_neighbors.size();
  check_offsets(out_offsets, vertex_count, m, "out");
  for (auto u : out_neighbors)
    if (u >= vertex_count) throw FormatError("out: neighbor id out of range");
  if (out_weights.empty()) out_weights.assign(m, 1.0f);
  if (out_weights.size() != m) throw FormatError("out: weight array has wrong length");
  CsrGraph g;
  g.vertex_count_ = vertex_count;
  g.directed_ = directed;
  g.weighted_ = weighted;
  g.out_offsets_ = std::move(out_offsets);
  g.out_neighbors_ = std::move(out_neighbors);
  g.out_weights_ = std::move(out_weights);
  if (!in_offsets.empty()) {
    if (in_neighbors.size() != m) throw FormatError("in: edge count differs from out structure");
    check_offsets(in_offsets, vertex_count, m, "in");
    for (auto u : in_neighbors)
      if (u >= vertex_count) throw FormatError("in: neighbor id out of range");
    if (in_weights.empty()) in_weights.assign(m, 1.0f);
    if (in_weights.size() != m) throw FormatError("in: weight array has wrong length");
    g.in_offsets_ = std::move(in_offsets);
    g.in_neighbors_ = std::move(in_neighbors);
    g.in_weights_ = std::move(in_weights);
  }
  return g;
}

CsrGraph build_csr(const EdgeList& el, bool build_reverse) {
  std::uint64_t n = el.vertex_count;
  for (const auto& e : el.edges) n = std::max<std::uint64_t>(n, std::uint64_t{std::max(e.src, e.dst)} + 1);

  std::vector<EdgeId> off(n + 1, 0);
  for (const auto& e : el.edges) {
    ++off[e.src + 1];
    if (!el.directed) ++off[e.dst + 1];
  }
  std::partial_sum(off.begin(), off.end(), off.begin());
  const auto m = off.back();
  std::vector<VertexId> nbrs(m);
  std::vector<Weight> wts(m);
  std::vector<EdgeId> cursor(off.begin(), off.end() - 1);
  for (const auto& e : el.edges) {
    auto i = cursor[e.src]++;
    nbrs[i] = e.dst;
    wts[i] = e.weight;
    if (!el.directed) {
      i = cursor[e.dst]++;
      nbrs[i] = e.src;
      wts[i] = e.weight;
    }
  }
  sort_ranges(off, nbrs, wts);
  auto g = CsrGraph::from_parts(n, el.directed, el.weighted, std::move(off), std::move(nbrs), std::move(wts));
  return build_reverse ? g.with_reverse() : g;
}

CsrGraph generate_weights(const CsrGraph& g, std::uint64_t seed, double lo, double hi, WeightKind kind) {
  if (!(lo >= 0) || !(lo < hi) || !std::isfinite(hi)) throw InvalidArgument("weight range must satisfy 0 <= lo < hi");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> real(lo, hi);
  const auto ilo = static_cast<std::int64_t>(std::ceil(lo));
  const auto ihi = static_cast<std::int64_t>(std::ceil(hi)) - 1;
  if (kind == WeightKind::integer && ilo > ihi) throw InvalidArgument("weight range contains no integer");
  std::uniform_int_distribution<std::int64_t> whole(ilo, std::max(ilo, ihi));
  const auto lo_f = static_cast<Weight>(lo);
  const auto hi_f = static_cast<Weight>(hi);
  auto draw = [&]() -> Weight {
    if (kind == WeightKind::integer) return static_cast<Weight>(whole(rng));
    auto w = static_cast<Weight>(real(rng));
    if (w >= hi_f) w = std::nextafter(hi_f, lo_f);
    return std::max(w, lo_f);
  };

  const auto& off = g.out_offsets();
  const auto& nbrs = g.out_neighbor_array();
  std::vector<Weight> w(g.edge_count(), 0.0f);
  std::vector<VertexId> nb(nbrs);
  if (g.directed()) {
    for (auto& x : w) x = draw();
  } else {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      const auto b = off[v], e = off[v + 1];
      for (auto i = b; i < e;) {
        const auto u = nbrs[i];
        auto j = i;
        while (j < e && nbrs[j] == u) ++j;
        if (u == v) {
          // a self-loop occupies two consecutive slots
          for (auto k = i; k + 1 < j; k += 2) w[k] = w[k + 1] = draw();
        } else if (u > v) {
          const auto mb = std::lower_bound(nbrs.begin() + off[u], nbrs.begin() + off[u + 1], v) - nbrs.begin();
          for (auto k = i; k < j; ++k) w[k] = w[mb + (k - i)] = draw();
        }
        i = j;
      }
    }
  }
  sort_ranges(off, nb, w);
  auto out = CsrGraph::from_parts(g.vertex_count(), g.directed(), true, off, std::move(nb), std::move(w));
  return g.has_reverse() ? out.with_reverse() : out;
}

EdgeList generate_rmat(unsigned scale, double edge_factor, std::uint64_t seed, bool directed, double a,
                       double b, double c) {
  if (scale == 0 || scale > 31) throw InvalidArgument("rmat scale must be in [1, 31]");
  if (a < 0 || b < 0 || c < 0 || a + b + c >= 1) throw InvalidArgument("rmat probabilities must be non-negative and sum below 1");
  EdgeList el;
  el.directed = directed;
  el.vertex_count = std::uint64_t{1} << scale;
  const auto m = static_cast<std::uint64_t>(edge_factor * static_cast<double>(el.vertex_count));
  el.edges.reserve(m);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::uint64_t i = 0; i < m; ++i) {
    VertexId s = 0, d = 0;
    for (unsigned bit = 0; bit < scale; ++bit) {
      const double r = unit(rng);
      const VertexId mask = VertexId{1} << (scale - 1 - bit);
      if (r < a) {
      } else if (r < a + b) {
        d |= mask;
      } else if (r < a + b + c) {
        s |= mask;
      } else {
        s |= mask;
        d |= mask;
      }
    }
    el.edges.push_back({s, d, 1.0f});
  }
  return el;
}

EdgeList generate_uniform(std::uint64_t vertex_count, std::uint64_t edge_count, std::uint64_t seed, bool directed) {
  if (vertex_count == 0 && edge_count > 0) throw InvalidArgument("cannot place edges on an empty vertex set");
  if (vertex_count > std::uint64_t{kInvalidVertex}) throw InvalidArgument("vertex count exceeds 32-bit id space");
  EdgeList el;
  el.directed = directed;
  el.vertex_count = vertex_count;
  el.edges.reserve(edge_count);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(vertex_count ? vertex_count - 1 : 0));
  for (std::uint64_t i = 0; i < edge_count; ++i) el.edges.push_back({pick(rng), pick(rng), 1.0f});
  return el;
}

}  // namespace accx
