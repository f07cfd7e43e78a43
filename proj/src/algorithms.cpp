#include <accx/algorithms.hpp>

#include <random>

namespace accx {

namespace {

void check_source(const CsrGraph& g, VertexId source) {
  if (source >= g.vertex_count())
    throw InvalidArgument("source " + std::to_string(source) + " out of range (|V|=" +
                          std::to_string(g.vertex_count()) + ")");
}

template <class S, class Fn>
auto project(RunResult<typename S::Value>&& r, Fn fn) {
  using T = decltype(fn(r.metadata.front()));
  AlgoRun<T> out;
  out.values.reserve(r.metadata.size());
  for (const auto& m : r.metadata) out.values.push_back(fn(m));
  out.stats = std::move(r.stats);
  out.jit_trace = std::move(r.jit_trace);
  return out;
}

}  // namespace

AlgoRun<std::uint32_t> bfs(const CsrGraph& g, VertexId source, const EngineConfig& cfg) {
  check_source(g, source);
  auto r = run(g, BfsSpec{source}, cfg);
  return {std::move(r.metadata), std::move(r.stats), std::move(r.jit_trace)};
}

double default_delta(const CsrGraph& g) {
  if (g.edge_count() == 0) return 1.0;
  double sum = 0.0;
  for (auto w : g.out_weight_array()) sum += w;
  return std::max(1.0, sum / static_cast<double>(g.edge_count()));
}

AlgoRun<double> sssp(const CsrGraph& g, VertexId source, std::optional<double> delta, const EngineConfig& cfg) {
  check_source(g, source);
  const auto& w = g.out_weight_array();
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!(w[i] > 0)) throw InvalidArgument("non-positive weight " + std::to_string(w[i]) + " on arc " + std::to_string(i));
  const double d = delta.value_or(default_delta(g));
  if (!(d > 0) || !std::isfinite(d)) throw InvalidArgument("delta must be positive");
  auto r = run(g, SsspSpec{source, d}, cfg);
  return project<SsspSpec>(std::move(r), [](const SsspMeta& m) { return m.dist; });
}

AlgoRun<KCoreMeta> kcore(const CsrGraph& g, std::uint64_t k, const EngineConfig& cfg) {
  if (g.directed()) throw InvalidArgument("k-core requires an undirected graph");
  auto r = run(g, KCoreSpec{k}, cfg);
  return {std::move(r.metadata), std::move(r.stats), std::move(r.jit_trace)};
}

double PageRankParams::resolved_epsilon(std::uint64_t n) const {
  return epsilon.value_or(1e-6 * static_cast<double>(std::max<std::uint64_t>(n, 1)));
}

double pagerank_tolerance(double epsilon, double damping) {
  return epsilon * (1.0 + damping) / (1.0 - damping);
}

AlgoRun<double> pagerank(const CsrGraph& g, const PageRankParams& params, const EngineConfig& cfg) {
  if (!(params.damping > 0 && params.damping < 1)) throw InvalidArgument("damping must lie in (0,1)");
  const auto n = g.vertex_count();
  PageRankSpec spec;
  spec.damping = params.damping;
  spec.epsilon = params.resolved_epsilon(n);
  if (!(spec.epsilon > 0)) throw InvalidArgument("epsilon must be positive");
  spec.theta = spec.epsilon / static_cast<double>(std::max<std::uint64_t>(n, 1));
  auto c = cfg;
  c.max_iterations = params.max_iterations;
  auto r = run(g, spec, c);
  return project<PageRankSpec>(std::move(r), [](const PrMeta& m) { return m.rank; });
}

double bp_message(double belief, double likelihood) {
  const double agree = belief * likelihood + (1.0 - belief) * (1.0 - likelihood);
  const double disagree = belief * (1.0 - likelihood) + (1.0 - belief) * likelihood;
  return std::log(agree) - std::log(disagree);
}

double bp_belief(const BpMeta& m, double summed) {
  if (summed == 0.0) return m.prior;
  return 1.0 / (1.0 + std::exp(-(m.prior_logit + summed)));
}

AlgoRun<double> belief_propagation(const CsrGraph& g, std::span<const double> priors, std::uint32_t iterations,
                                   const EngineConfig& cfg) {
  if (priors.size() != g.vertex_count()) throw InvalidArgument("need one prior per vertex");
  for (std::size_t v = 0; v < priors.size(); ++v)
    if (!(priors[v] >= 0.0 && priors[v] <= 1.0))
      throw InvalidArgument("prior of vertex " + std::to_string(v) + " outside [0,1]");
  const auto& w = g.out_weight_array();
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!(w[i] > 0.0f && w[i] < 1.0f))
      throw InvalidArgument("likelihood on arc " + std::to_string(i) + " outside (0,1)");
  auto c = cfg;
  c.max_iterations = std::max(c.max_iterations, iterations);
  auto r = run(g, BeliefPropagationSpec{priors, iterations}, c);
  return project<BeliefPropagationSpec>(std::move(r), [](const BpMeta& m) { return m.belief; });
}

AlgoRun<double> belief_propagation(const CsrGraph& g, std::span<const double> priors,
                                   std::span<const Weight> likelihoods, std::uint32_t iterations,
                                   const EngineConfig& cfg) {
  return belief_propagation(g.with_weights(likelihoods), priors, iterations, cfg);
}

std::vector<double> generate_priors(std::uint64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.1, 0.9);
  std::vector<double> out(n);
  for (auto& p : out) p = dist(rng);
  return out;
}

CsrGraph generate_likelihoods(const CsrGraph& g, std::uint64_t seed) {
  return generate_weights(g, seed, 0.55, 0.95);
}

}  // namespace accx
