#include <accx/algorithms.hpp>
#include <accx/reference.hpp>

#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace accx;
using namespace accx::testing;

namespace {

EngineConfig config(unsigned workers, FilterMode filter = FilterMode::jit, bool deterministic = false) {
  EngineConfig cfg;
  cfg.worker_count = workers;
  cfg.filter = filter;
  cfg.deterministic = deterministic;
  return cfg;
}

std::vector<std::uint8_t> alive_of(const std::vector<KCoreMeta>& m) {
  std::vector<std::uint8_t> out;
  for (const auto& x : m) out.push_back(x.alive);
  return out;
}

const FilterMode kFilters[] = {FilterMode::jit, FilterMode::ballot, FilterMode::batch};

}  // namespace

TEST_CASE("bfs") {
  SUBCASE("path") {
    CHECK(bfs(path_graph(5, false), 0).values == std::vector<std::uint32_t>{0, 1, 2, 3, 4});
  }
  SUBCASE("second component stays unvisited") {
    const auto r = bfs(from_text("0 1\n2 3\n", false), 0);
    CHECK(r.values[2] == kUnvisited);
    CHECK(r.values[3] == kUnvisited);
  }
  SUBCASE("invalid source") { CHECK_THROWS_AS(bfs(path_graph(3, false), 3), InvalidArgument); }
  SUBCASE("property: oracle, edge levels and cross-config equality") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const bool directed = seed % 2;
      const auto g = random_graph(1000, 5000, seed, directed);
      const auto src = static_cast<VertexId>(seed * 31 % 1000);
      const auto want = oracle::bfs(g, src);
      for (unsigned w : {1u, 2u, 8u})
        for (auto f : kFilters) CHECK(bfs(g, src, config(w, f)).values == want);
      for (const auto& e : g.arcs())
        if (want[e.src] != kUnvisited && want[e.dst] != kUnvisited && !directed)
          CHECK(std::abs(static_cast<long>(want[e.src]) - static_cast<long>(want[e.dst])) <= 1);
      CHECK(reference::bfs(g, src) == want);
    }
  }
}

TEST_CASE("sssp") {
  SUBCASE("sample iteration 1") {
    EngineConfig cfg;
    cfg.max_iterations = 1;
    const auto r = sssp(sample_graph(), Sample::a, 1000.0, cfg);
    CHECK(r.values[Sample::b] == 5.0);
    CHECK(r.values[Sample::d] == 1.0);
    CHECK(std::isinf(r.values[Sample::c]));
  }
  SUBCASE("single vertex") {
    const auto g = build_csr(EdgeList{true, false, 1, {}}, false);
    const auto r = sssp(g, 0);
    CHECK(r.values == std::vector<double>{0.0});
  }
  SUBCASE("non-positive weight") {
    CHECK_THROWS_WITH_AS(sssp(from_text("0 1 0\n", true), 0), doctest::Contains("non-positive weight"),
                         InvalidArgument);
    CHECK_THROWS_AS(sssp(sample_graph(), 0, -1.0), InvalidArgument);
  }
  SUBCASE("default delta") {
    CHECK(default_delta(from_text("0 1 0.5\n", true)) == 1.0);
    CHECK(default_delta(from_text("0 1 4\n1 2 6\n", true)) == 5.0);
  }
  SUBCASE("property: dijkstra, triangle inequality, delta and config independence") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto g = random_weighted(500, 4000, seed, seed % 2);
      const auto src = static_cast<VertexId>(seed % 500);
      const auto want = oracle::dijkstra(g, src);
      double wmax = 0;
      for (auto w : g.out_weight_array()) wmax = std::max(wmax, static_cast<double>(w));
      for (double delta : {1.0, default_delta(g), wmax}) CHECK(sssp(g, src, delta).values == want);
      for (unsigned w : {1u, 2u, 8u})
        for (auto f : kFilters) CHECK(sssp(g, src, std::nullopt, config(w, f)).values == want);
      for (const auto& e : g.arcs()) CHECK(want[e.dst] <= want[e.src] + e.weight);
      CHECK(reference::dijkstra(g, src) == want);
    }
  }
}

TEST_CASE("kcore") {
  SUBCASE("triangle, k=2") {
    const auto r = kcore(from_text("0 1\n1 2\n2 0\n", false), 2);
    for (const auto& m : r.values) CHECK(m.alive);
  }
  SUBCASE("star, k=2") {
    const auto r = kcore(star_graph(5), 2);
    for (const auto& m : r.values) CHECK_FALSE(m.alive);
  }
  SUBCASE("directed input") { CHECK_THROWS_AS(kcore(from_text("0 1\n", true), 2), InvalidArgument); }
  SUBCASE("property: peeling oracle and core invariants") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const auto g = random_graph(2000, 20000, seed);
      for (std::uint64_t k : {2u, 16u, 32u}) {
        const auto want = oracle::kcore_alive(g, k);
        for (unsigned w : {1u, 2u, 8u}) {
          const auto r = kcore(g, k, config(w));
          CHECK(alive_of(r.values) == want);
          CHECK(reference::compare_kcore(r.values, reference::kcore(g, k)).pass);
        }
        CHECK(alive_of(kcore(g, k, config(3, FilterMode::batch)).values) == want);
        CHECK(alive_of(kcore(g, k, config(3, FilterMode::ballot)).values) == want);
        const auto r = kcore(g, k);
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
          if (!r.values[v].alive) continue;
          std::uint64_t n = 0;
          for (auto u : g.out_neighbors(v)) n += want[u];
          CHECK(n >= k);
          CHECK(r.values[v].count == n);
        }
      }
    }
  }
}

TEST_CASE("pagerank") {
  SUBCASE("two vertices are symmetric") {
    const auto r = pagerank(from_text("0 1\n1 0\n", true, true));
    CHECK(r.values[0] == doctest::Approx(r.values[1]).epsilon(1e-12));
  }
  SUBCASE("single vertex") {
    const auto g = build_csr(EdgeList{true, false, 1, {}}, true);
    CHECK(pagerank(g).values[0] == doctest::Approx(0.15));
  }
  SUBCASE("bad damping") {
    CHECK_THROWS_AS(pagerank(path_graph(3, false), PageRankParams{1.0}), InvalidArgument);
  }
  SUBCASE("property: power-iteration oracle and rank floor") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      const auto g = random_graph(500, 3000, seed, true);
      const auto want = oracle::pagerank(g, 0.85);
      PageRankParams params;
      params.epsilon = 1e-8;
      for (unsigned w : {1u, 2u, 8u}) {
        const auto r = pagerank(g, params, config(w));
        CHECK(r.stats.converged);
        CHECK(oracle::l1(r.values, want) <= 1e-6);
        for (double x : r.values) CHECK(x >= 0.15 - 1e-12);
      }
      CHECK(oracle::l1(pagerank(g, params, config(2, FilterMode::batch)).values, want) <= 1e-6);
      CHECK(oracle::l1(pagerank(g, params, config(2, FilterMode::ballot)).values, want) <= 1e-6);
      CHECK(oracle::l1(reference::pagerank(g, 0.85), want) <= 1e-9);
    }
  }
  SUBCASE("property: L1 step shrinks on strongly connected inputs") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto g = random_graph(300, 3000, seed);  // undirected and dense enough to be connected
      const auto reach = oracle::bfs(g, 0);
      REQUIRE(std::count(reach.begin(), reach.end(), oracle::kUnreached) == 0);
      PageRankParams params;
      params.epsilon = 1e-9;
      const auto r = pagerank(g, params, config(1, FilterMode::jit, true));
      const auto& it = r.stats.iterations;
      for (std::size_t i = 2; i < it.size(); ++i)
        if (it[i].all_active && it[i - 1].all_active) CHECK(it[i].delta_l1 <= it[i - 1].delta_l1);
    }
  }
}

TEST_CASE("belief propagation") {
  SUBCASE("uniform priors stay at 0.5") {
    const auto g = generate_weights(random_graph(50, 200, 1), 1, 0.6, 0.9);
    const std::vector<double> priors(50, 0.5);
    const auto r = belief_propagation(g, priors, 10);
    for (double b : r.values) CHECK(b == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("isolated vertex keeps its prior") {
    const auto g4 = build_csr(EdgeList{false, true, 4, {{0, 1, 0.8f}, {1, 2, 0.7f}}}, false);
    const std::vector<double> priors{0.2, 0.7, 0.4, 0.33};
    CHECK(belief_propagation(g4, priors, 7).values[3] == 0.33);
  }
  SUBCASE("three-vertex chain matches the sequential recurrence") {
    const auto g = from_text("0 1 0.8\n1 2 0.7\n", false);
    const std::vector<double> priors{0.9, 0.5, 0.3};
    const auto r = belief_propagation(g, priors, 5, config(1, FilterMode::jit, true));
    CHECK(oracle::linf(r.values, oracle::belief_propagation(g, priors, 5)) <= 1e-12);
    CHECK(r.stats.iterations.size() == 5);
  }
  SUBCASE("range errors") {
    const auto g = from_text("0 1 0.8\n", false);
    CHECK_THROWS_AS(belief_propagation(g, std::vector<double>{0.5, 1.5}), InvalidArgument);
    CHECK_THROWS_AS(belief_propagation(from_text("0 1 1\n", false), std::vector<double>{0.5, 0.5}),
                    InvalidArgument);
    CHECK_THROWS_AS(belief_propagation(g, std::vector<double>{0.5}), InvalidArgument);
  }
  SUBCASE("property: oracle, range and determinism") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const auto g = generate_likelihoods(random_graph(400, 2000, seed), seed);
      const auto priors = generate_priors(400, seed);
      const auto want = oracle::belief_propagation(g, priors, 30);
      std::vector<std::vector<double>> runs;
      for (unsigned w : {1u, 2u, 8u}) {
        const auto r = belief_propagation(g, priors, 30, config(w, FilterMode::jit, true));
        CHECK(oracle::linf(r.values, want) <= 1e-12);
        for (double b : r.values) {
          CHECK(b >= 0.0);
          CHECK(b <= 1.0);
        }
        runs.push_back(r.values);
      }
      CHECK(runs[0] == runs[1]);
      CHECK(runs[0] == runs[2]);
      CHECK(oracle::linf(reference::belief_propagation(g, priors, 30), want) <= 1e-12);
    }
  }
  SUBCASE("separate likelihood array") {
    const auto g = random_graph(30, 100, 4);
    const auto lg = generate_likelihoods(g, 4);
    const auto priors = generate_priors(30, 4);
    CHECK(belief_propagation(g, priors, lg.out_weight_array(), 12).values ==
          belief_propagation(lg, priors, 12).values);
  }
}

TEST_CASE("jit trace audit") {
  const auto g = build_csr(generate_rmat(12, 8, 5, false), false);
  auto audit = [](const RunStats& s) {
    for (const auto& row : s.iterations) CHECK((row.filter == FilterKind::ballot) == row.overflow);
  };
  audit(bfs(g, 0, config(4)).stats);
  audit(sssp(generate_weights(g, 1, 1, 10, WeightKind::integer), 0, std::nullopt, config(4)).stats);
  audit(kcore(g, 8, config(4)).stats);
  SUBCASE("dense algorithms overflow exactly at iteration 1") {
    const auto gd = g.with_reverse();
    const auto pr = pagerank(gd, PageRankParams{}, config(4));
    REQUIRE_FALSE(pr.stats.iterations.empty());
    CHECK(pr.stats.iterations[0].filter == FilterKind::ballot);
    for (std::size_t i = 1; i < pr.stats.iterations.size(); ++i)
      CHECK(pr.stats.iterations[i].filter != FilterKind::ballot);
    const auto lg = generate_likelihoods(g, 3);
    const auto bp = belief_propagation(lg, generate_priors(g.vertex_count(), 3), 10, config(4));
    CHECK(bp.stats.iterations[0].filter == FilterKind::ballot);
    for (std::size_t i = 1; i < bp.stats.iterations.size(); ++i)
      CHECK(bp.stats.iterations[i].filter != FilterKind::ballot);
  }
}
