#include <accx/reference.hpp>

#include <cmath>
#include <deque>
#include <functional>
#include <queue>
#include <sstream>

namespace accx::reference {

std::vector<std::uint32_t> bfs(const CsrGraph& g, VertexId source) {
  std::vector<std::uint32_t> level(g.vertex_count(), kUnvisited);
  std::deque<VertexId> q{source};
  level[source] = 0;
  while (!q.empty()) {
    const auto v = q.front();
    q.pop_front();
    for (auto u : g.out_neighbors(v))
      if (level[u] == kUnvisited) {
        level[u] = level[v] + 1;
        q.push_back(u);
      }
  }
  return level;
}

std::vector<double> dijkstra(const CsrGraph& g, VertexId source) {
  std::vector<double> dist(g.vertex_count(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    const auto nbr = g.out_neighbors(v);
    const auto w = g.out_weights(v);
    for (std::size_t i = 0; i < nbr.size(); ++i) {
      const double cand = d + static_cast<double>(w[i]);
      if (cand < dist[nbr[i]]) {
        dist[nbr[i]] = cand;
        heap.push({cand, nbr[i]});
      }
    }
  }
  return dist;
}

Peeling kcore(const CsrGraph& g, std::uint64_t k) {
  const auto n = g.vertex_count();
  Peeling p;
  p.alive.assign(n, 1);
  p.count.resize(n);
  std::vector<VertexId> queue;
  for (VertexId v = 0; v < n; ++v) {
    p.count[v] = g.out_degree(v);
    if (p.count[v] < k) {
      p.alive[v] = 0;
      queue.push_back(v);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (auto u : g.out_neighbors(queue[head]))
      if (p.alive[u] && --p.count[u] < k) {
        p.alive[u] = 0;
        queue.push_back(u);
      }
  return p;
}

namespace {

/// In-arcs grouped by destination in ascending source order.
struct InArcs {
  std::vector<EdgeId> offsets;
  std::vector<VertexId> src;
  std::vector<Weight> weight;
};

InArcs in_arcs(const CsrGraph& g) {
  InArcs a;
  const auto n = g.vertex_count();
  a.offsets.assign(n + 1, 0);
  for (auto u : g.out_neighbor_array()) ++a.offsets[u + 1];
  for (std::size_t v = 0; v < n; ++v) a.offsets[v + 1] += a.offsets[v];
  a.src.resize(g.edge_count());
  a.weight.resize(g.edge_count());
  auto fill = a.offsets;
  for (VertexId v = 0; v < n; ++v) {
    const auto nbr = g.out_neighbors(v);
    const auto w = g.out_weights(v);
    for (std::size_t i = 0; i < nbr.size(); ++i) {
      a.src[fill[nbr[i]]] = v;
      a.weight[fill[nbr[i]]++] = w[i];
    }
  }
  return a;
}

}  // namespace

std::vector<double> pagerank(const CsrGraph& g, double damping, double tol, std::uint32_t max_iterations) {
  const auto n = g.vertex_count();
  const auto in = in_arcs(g);
  std::vector<double> r(n, 1.0 - damping), next(n);
  for (std::uint32_t it = 0; it < max_iterations; ++it) {
    double step = 0.0;
    for (VertexId u = 0; u < n; ++u) {
      double s = 0.0;
      for (auto j = in.offsets[u]; j < in.offsets[u + 1]; ++j)
        s += r[in.src[j]] / static_cast<double>(g.out_degree(in.src[j]));
      next[u] = (1.0 - damping) + damping * s;
      step += std::abs(next[u] - r[u]);
    }
    r.swap(next);
    if (step < tol) break;
  }
  return r;
}

std::vector<double> belief_propagation(const CsrGraph& g, std::span<const double> priors, std::uint32_t iterations) {
  const auto n = g.vertex_count();
  const auto in = in_arcs(g);
  std::vector<BpMeta> m(n), next(n);
  for (VertexId v = 0; v < n; ++v) m[v] = {priors[v], priors[v], std::log(priors[v]) - std::log1p(-priors[v])};
  if (g.edge_count() == 0) iterations = 0;
  for (std::uint32_t it = 0; it < iterations; ++it) {
    for (VertexId u = 0; u < n; ++u) {
      double s = 0.0;
      for (auto j = in.offsets[u]; j < in.offsets[u + 1]; ++j) {
        const double msg = bp_message(m[in.src[j]].belief, in.weight[j]);
        if (msg != 0.0) s += msg;
      }
      next[u] = m[u];
      next[u].belief = bp_belief(m[u], s);
    }
    m.swap(next);
  }
  std::vector<double> out(n);
  for (VertexId v = 0; v < n; ++v) out[v] = m[v].belief;
  return out;
}

namespace {

std::string describe(VertexId v, double got, double want) {
  std::ostringstream os;
  os.precision(17);
  os << "vertex " << v << ": got " << got << ", expected " << want;
  return os.str();
}

Verdict size_mismatch(std::size_t got, std::size_t want) {
  return {false, std::nullopt, std::numeric_limits<double>::infinity(),
          "size mismatch: got " + std::to_string(got) + ", expected " + std::to_string(want)};
}

}  // namespace

Verdict compare_exact(std::span<const std::uint32_t> got, std::span<const std::uint32_t> want) {
  if (got.size() != want.size()) return size_mismatch(got.size(), want.size());
  for (std::size_t v = 0; v < got.size(); ++v)
    if (got[v] != want[v])
      return {false, static_cast<VertexId>(v), 1.0, describe(static_cast<VertexId>(v), got[v], want[v])};
  return {};
}

Verdict compare_exact(std::span<const double> got, std::span<const double> want) {
  if (got.size() != want.size()) return size_mismatch(got.size(), want.size());
  for (std::size_t v = 0; v < got.size(); ++v)
    if (got[v] != want[v] && !(std::isinf(got[v]) && std::isinf(want[v])))
      return {false, static_cast<VertexId>(v), std::abs(got[v] - want[v]),
              describe(static_cast<VertexId>(v), got[v], want[v])};
  return {};
}

Verdict compare_l1(std::span<const double> got, std::span<const double> want, double tol) {
  if (got.size() != want.size()) return size_mismatch(got.size(), want.size());
  Verdict out;
  double worst = -1.0;
  for (std::size_t v = 0; v < got.size(); ++v) {
    const double d = std::abs(got[v] - want[v]);
    out.error += d;
    if (d > worst) {
      worst = d;
      out.first_divergent = static_cast<VertexId>(v);
    }
  }
  out.pass = out.error <= tol;
  std::ostringstream os;
  os << "L1 error " << out.error << " (tolerance " << tol << ")";
  if (!out.pass && out.first_divergent)
    os << "; largest at " << describe(*out.first_divergent, got[*out.first_divergent], want[*out.first_divergent]);
  if (out.pass) out.first_divergent.reset();
  out.detail = os.str();
  return out;
}

Verdict compare_linf(std::span<const double> got, std::span<const double> want, double tol) {
  if (got.size() != want.size()) return size_mismatch(got.size(), want.size());
  Verdict out;
  for (std::size_t v = 0; v < got.size(); ++v) {
    const double d = std::abs(got[v] - want[v]);
    if (d > out.error) out.error = d;
    if (d > tol && out.pass) {
      out.pass = false;
      out.first_divergent = static_cast<VertexId>(v);
      out.detail = describe(static_cast<VertexId>(v), got[v], want[v]);
    }
  }
  if (out.pass) {
    std::ostringstream os;
    os << "max error " << out.error << " (tolerance " << tol << ")";
    out.detail = os.str();
  }
  return out;
}

Verdict compare_kcore(std::span<const KCoreMeta> got, const Peeling& want) {
  if (got.size() != want.alive.size()) return size_mismatch(got.size(), want.alive.size());
  for (std::size_t v = 0; v < got.size(); ++v) {
    const auto id = static_cast<VertexId>(v);
    if (got[v].alive != static_cast<bool>(want.alive[v]))
      return {false, id, 1.0,
              "vertex " + std::to_string(v) + ": alive=" + std::to_string(got[v].alive) + ", expected " +
                  std::to_string(want.alive[v])};
    if (got[v].alive && got[v].count != want.count[v])
      return {false, id, 1.0,
              "vertex " + std::to_string(v) + ": count " + std::to_string(got[v].count) + ", expected " +
                  std::to_string(want.count[v])};
  }
  return {};
}

}  // namespace accx::reference
