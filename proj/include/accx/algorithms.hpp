#pragma once

#include <accx/acc.hpp>
#include <accx/engine.hpp>
#include <accx/graph.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace accx {

template <class T>
struct AlgoRun {
  std::vector<T> values;
  RunStats stats;
  std::vector<JitTraceRow> jit_trace;
};

// ---------------------------------------------------------------------------
// BFS

inline constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();

struct BfsSpec {
  using Value = std::uint32_t;
  using Update = std::uint32_t;
  using Combine = MinCombine<std::uint32_t>;

  VertexId source = 0;

  Combine combiner() const { return {}; }
  CombineClass combine_class() const { return CombineClass::voting; }
  Value init(VertexId v, const CsrGraph&) const { return v == source ? 0 : kUnvisited; }
  bool active(VertexId, const Value& m) const { return m != kUnvisited; }
  Update compute(const Value& src, Weight, const Value& dst) const {
    return dst == kUnvisited && src != kUnvisited ? src + 1 : kUnvisited;
  }
  bool apply(Value& m, const Update& u) const {
    if (m != kUnvisited || u == kUnvisited) return false;
    m = u;
    return true;
  }
  bool pull_target(const Value& m) const { return m == kUnvisited; }
};

AlgoRun<std::uint32_t> bfs(const CsrGraph& g, VertexId source, const EngineConfig& cfg = {});

// ---------------------------------------------------------------------------
// SSSP (delta-stepping)

struct SsspMeta {
  double dist = std::numeric_limits<double>::infinity();
  double pushed = std::numeric_limits<double>::infinity();  // distance last propagated
  friend bool operator==(const SsspMeta&, const SsspMeta&) = default;
};

struct SsspSpec {
  using Value = SsspMeta;
  using Update = double;
  using Combine = MinCombine<double>;

  VertexId source = 0;
  double delta = 1.0;

  Combine combiner() const { return {}; }
  CombineClass combine_class() const { return CombineClass::aggregation; }
  Value init(VertexId v, const CsrGraph&) const {
    Value m;
    if (v == source) m.dist = 0.0;
    return m;
  }
  bool active(VertexId, const Value& m) const { return m.dist < m.pushed; }
  Update compute(const Value& src, Weight w, const Value& dst) const {
    const double cand = src.dist + static_cast<double>(w);
    return cand < dst.dist ? cand : std::numeric_limits<double>::infinity();
  }
  bool apply(Value& m, const Update& u) const {
    if (!(u < m.dist)) return false;
    m.dist = u;
    return true;
  }
  void settle(Value& m) const { m.pushed = m.dist; }
  double priority(const Value& m) const { return m.dist; }
  double bucket_width() const { return delta; }
};

/// max(1, mean edge weight).
double default_delta(const CsrGraph& g);

/// Throws InvalidArgument on an invalid source or a non-positive weight.
AlgoRun<double> sssp(const CsrGraph& g, VertexId source, std::optional<double> delta = std::nullopt,
                     const EngineConfig& cfg = {});

// ---------------------------------------------------------------------------
// k-Core

struct KCoreMeta {
  std::uint64_t count = 0;  // remaining degree; frozen once dead
  bool alive = true;
  friend bool operator==(const KCoreMeta&, const KCoreMeta&) = default;
};

struct KCoreSpec {
  using Value = KCoreMeta;
  using Update = std::uint64_t;
  using Combine = SumCombine<std::uint64_t>;

  std::uint64_t k = 16;

  Combine combiner() const { return {}; }
  CombineClass combine_class() const { return CombineClass::aggregation; }
  Value init(VertexId v, const CsrGraph& g) const {
    const auto d = g.out_degree(v);
    return {d, d >= k};
  }
  bool active(VertexId, const Value& m) const { return !m.alive; }
  // dead sources remove themselves from alive neighbors; already-dead
  // destinations are skipped
  Update compute(const Value&, Weight, const Value& dst) const { return dst.alive ? 1 : 0; }
  bool apply(Value& m, const Update& u) const {
    if (!m.alive || u == 0) return false;
    m.count -= std::min(m.count, u);
    if (m.count >= k) return false;
    m.alive = false;
    return true;
  }
  bool pull_target(const Value& m) const { return m.alive; }
  DirectionPolicy direction_policy() const { return DirectionPolicy::pull_then_push; }
};

inline constexpr std::uint64_t kDefaultK = 16;

/// Throws InvalidArgument for directed graphs.
AlgoRun<KCoreMeta> kcore(const CsrGraph& g, std::uint64_t k = kDefaultK, const EngineConfig& cfg = {});

// ---------------------------------------------------------------------------
// PageRank, delta-propagating form: each vertex sends the part of its rank
// it has not sent yet, so dense iterations reproduce Jacobi power iteration
// from r0 = (1-d) and sparse iterations only move residuals above theta.

struct PrMeta {
  double rank = 0.0;
  double sent = 0.0;
  double inv_degree = 0.0;
  friend bool operator==(const PrMeta&, const PrMeta&) = default;
};

struct PageRankSpec {
  using Value = PrMeta;
  using Update = double;
  using Combine = SumCombine<double>;

  double damping = 0.85;
  double epsilon = 1e-6;  // L1 convergence bound
  double theta = 1e-9;    // per-vertex activity bound
  double stable_fraction = 0.9;

  Combine combiner() const { return {}; }
  CombineClass combine_class() const { return CombineClass::aggregation; }
  Value init(VertexId v, const CsrGraph& g) const {
    const auto d = g.out_degree(v);
    return {1.0 - damping, 0.0, d ? 1.0 / static_cast<double>(d) : 0.0};
  }
  bool active(VertexId, const Value& m) const { return std::abs(m.rank - m.sent) > theta; }
  Update compute(const Value& src, Weight, const Value&) const { return (src.rank - src.sent) * src.inv_degree; }
  bool apply(Value& m, const Update& u) const {
    if (u == 0.0) return false;
    const double before = m.rank;
    m.rank += damping * u;
    return m.rank != before;
  }
  void settle(Value& m) const { m.sent = m.rank; }
  double change(const Value& a, const Value& b) const { return std::abs(b.rank - a.rank); }
  Density density() const { return Density::dense_then_sparse; }
  bool keep_dense(const IterationStats& st, std::uint64_t n) const {
    return static_cast<double>(n - std::min<std::uint64_t>(st.flagged, n)) <
           stable_fraction * static_cast<double>(n);
  }
  DirectionPolicy direction_policy() const { return DirectionPolicy::follow_density; }
  bool converged(const IterationStats& st) const { return st.delta_l1 < epsilon; }
};

struct PageRankParams {
  double damping = 0.85;
  std::optional<double> epsilon;  // default 1e-6 * vertex_count
  std::uint32_t max_iterations = 1000;

  double resolved_epsilon(std::uint64_t n) const;
};

/// L1 distance to the exact fixpoint that the convergence rule admits.
double pagerank_tolerance(double epsilon, double damping);

AlgoRun<double> pagerank(const CsrGraph& g, const PageRankParams& params = {}, const EngineConfig& cfg = {});

// ---------------------------------------------------------------------------
// Belief propagation on a binary-state model. Edge weights are likelihoods
// L(v,u) = P(u agrees with v) in (0,1); each in-neighbor contributes the log
// odds ratio of its belief under L, and the belief is the logistic of the
// prior log-odds plus the summed contributions.

struct BpMeta {
  double belief = 0.5;
  double prior = 0.5;
  double prior_logit = 0.0;
  friend bool operator==(const BpMeta&, const BpMeta&) = default;
};

double bp_message(double belief, double likelihood);
double bp_belief(const BpMeta& m, double summed);

struct BeliefPropagationSpec {
  using Value = BpMeta;
  using Update = double;
  using Combine = SumCombine<double>;

  std::span<const double> priors;
  std::uint32_t iterations = 30;

  Combine combiner() const { return {}; }
  CombineClass combine_class() const { return CombineClass::aggregation; }
  Value init(VertexId v, const CsrGraph&) const {
    const double p = priors[v];
    return {p, p, std::log(p) - std::log1p(-p)};
  }
  bool active(VertexId, const Value&) const { return true; }
  Update compute(const Value& src, Weight w, const Value&) const { return bp_message(src.belief, w); }
  bool apply(Value& m, const Update& u) const {
    const double before = m.belief;
    m.belief = bp_belief(m, u);
    return m.belief != before;
  }
  double change(const Value& a, const Value& b) const { return std::abs(b.belief - a.belief); }
  Density density() const { return Density::dense; }
  DirectionPolicy direction_policy() const { return DirectionPolicy::follow_density; }
  bool converged(const IterationStats& st) const { return st.iteration >= iterations; }
};

inline constexpr std::uint32_t kDefaultBpIterations = 30;

/// Likelihoods are the graph's edge weights. Throws InvalidArgument for
/// priors outside [0,1] or likelihoods outside (0,1).
AlgoRun<double> belief_propagation(const CsrGraph& g, std::span<const double> priors,
                                   std::uint32_t iterations = kDefaultBpIterations, const EngineConfig& cfg = {});

/// Same, with per-arc likelihoods aligned with out_neighbor_array().
AlgoRun<double> belief_propagation(const CsrGraph& g, std::span<const double> priors,
                                   std::span<const Weight> likelihoods,
                                   std::uint32_t iterations = kDefaultBpIterations, const EngineConfig& cfg = {});

/// Seeded priors in [0.1, 0.9] and likelihoods in [0.55, 0.95].
std::vector<double> generate_priors(std::uint64_t n, std::uint64_t seed);
CsrGraph generate_likelihoods(const CsrGraph& g, std::uint64_t seed);

}  // namespace accx
