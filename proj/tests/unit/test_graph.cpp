#include <accx/graph.hpp>

#include <doctest.h>

#include "helpers.hpp"

#include <algorithm>
#include <sstream>

using namespace accx;
using namespace accx::testing;

namespace {

std::vector<Edge> sorted_arcs(std::vector<Edge> v) {
  std::sort(v.begin(), v.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.src, x.dst, x.weight) < std::tie(y.src, y.dst, y.weight);
  });
  return v;
}

std::string round_trip_bytes(const CsrGraph& g) {
  std::ostringstream out;
  write_binary(g, out);
  return out.str();
}

}  // namespace

TEST_CASE("edge list parsing") {
  SUBCASE("comments, blank lines and weights") {
    std::istringstream in("# header\n% mm comment\n\n0 1 2.5\n1 2\t4\n");
    const auto el = load_edge_list(in, true);
    CHECK(el.weighted);
    CHECK(el.vertex_count == 3);
    REQUIRE(el.edges.size() == 2);
    CHECK(el.edges[0] == Edge{0, 1, 2.5f});
    CHECK(el.edges[1] == Edge{1, 2, 4.0f});
  }
  SUBCASE("unweighted lists get unit weights") {
    std::istringstream in("3 1\n");
    const auto el = load_edge_list(in, false);
    CHECK_FALSE(el.weighted);
    CHECK(el.vertex_count == 4);
    CHECK(el.edges[0].weight == 1.0f);
  }
  SUBCASE("empty input") {
    std::istringstream in("# nothing\n");
    const auto el = load_edge_list(in, true);
    CHECK(el.vertex_count == 0);
    CHECK(build_csr(el, true).edge_count() == 0);
  }
}

TEST_CASE("edge list errors carry the line number") {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      load_edge_list(in, true);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("0 1\n1 x\n") == 2);
  CHECK(line_of("0\n") == 1);
  CHECK(line_of("0 1 2 3\n") == 1);
  CHECK(line_of("0 1\n0 1\n0 1 -1\n") == 3);
  CHECK(line_of("0 1 nan\n") == 1);
  CHECK(line_of("4294967295 1\n") == 1);
  CHECK(line_of("-1 2\n") == 1);
  CHECK_THROWS_AS(load_edge_list_file("/nonexistent/file.txt", true), Error);
}

TEST_CASE("csr construction") {
  SUBCASE("undirected triangle doubles edges") {
    const auto g = from_text("0 1\n1 2\n2 0\n", false);
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 6);
    CHECK_FALSE(g.directed());
    CHECK(g.has_in_edges());
    for (VertexId v = 0; v < 3; ++v) CHECK(g.out_degree(v) == 2);
  }
  SUBCASE("self-loops and duplicates are kept") {
    const auto g = from_text("0 0\n0 1\n0 1\n", false);
    CHECK(g.out_degree(0) == 4);  // loop twice, duplicate edge twice
    CHECK(g.out_degree(1) == 2);
  }
  SUBCASE("neighbors sorted") {
    const auto g = from_text("0 5\n0 2\n0 9\n0 1\n", true);
    const auto n = g.out_neighbors(0);
    CHECK(std::is_sorted(n.begin(), n.end()));
  }
  SUBCASE("directed without reverse has no in-edges") {
    const auto g = from_text("0 1\n", true);
    CHECK_FALSE(g.has_in_edges());
    CHECK(g.with_reverse().has_in_edges());
  }
}

TEST_CASE("property: reverse structure is the transpose") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = random_weighted(50 + seed * 7, 300, seed, true);
    REQUIRE(g.has_reverse());
    std::vector<Edge> flipped;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
      const auto nbr = g.in_neighbors(u);
      const auto w = g.in_weights(u);
      CHECK(std::is_sorted(nbr.begin(), nbr.end()));
      for (std::size_t j = 0; j < nbr.size(); ++j) flipped.push_back({nbr[j], u, w[j]});
    }
    CHECK(sorted_arcs(flipped) == sorted_arcs(g.arcs()));
  }
}

TEST_CASE("binary format") {
  SUBCASE("property: round trip is lossless") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const bool directed = seed % 2;
      auto g = random_graph(30 + seed, 100 + seed * 3, seed, directed);
      if (seed % 3 == 0) g = generate_weights(g, seed, 0.5, 2.0);
      std::istringstream in(round_trip_bytes(g));
      CHECK(read_binary(in) == g);
    }
  }
  SUBCASE("unweighted graphs omit weights") {
    const auto g = from_text("0 1\n", true);
    const auto w = generate_weights(g, 1, 1, 5);
    CHECK(round_trip_bytes(g).size() < round_trip_bytes(w).size());
  }
  SUBCASE("magic and header") {
    const auto bytes = round_trip_bytes(from_text("0 1\n", true));
    CHECK(bytes.substr(0, 4) == "ACCX");
  }
  SUBCASE("bad magic") {
    auto bytes = round_trip_bytes(from_text("0 1\n", true));
    bytes[0] = 'X';
    std::istringstream in(bytes);
    CHECK_THROWS_AS(read_binary(in), FormatError);
  }
  SUBCASE("truncation") {
    const auto bytes = round_trip_bytes(from_text("0 1\n1 2\n2 3\n", false));
    for (std::size_t cut : {std::size_t{3}, std::size_t{10}, bytes.size() - 1}) {
      std::istringstream in(bytes.substr(0, cut));
      CHECK_THROWS_AS(read_binary(in), FormatError);
    }
  }
  SUBCASE("trailing bytes") {
    std::istringstream in(round_trip_bytes(from_text("0 1\n", true)) + "z");
    CHECK_THROWS_AS(read_binary(in), FormatError);
  }
  SUBCASE("files") {
    const std::string path = std::string(ACCX_TEST_TMP) + "/graph_io.bin";
    const auto g = sample_graph();
    write_binary_file(g, path);
    CHECK(is_binary_graph_file(path));
    CHECK(read_binary_file(path) == g);
  }
}

TEST_CASE("generated weights") {
  SUBCASE("property: undirected mirrors share a weight") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto g = generate_weights(random_graph(40, 200, seed), seed, 1, 100, WeightKind::integer);
      CHECK(g.weighted());
      std::vector<Edge> mirrored;
      for (const auto& e : g.arcs()) {
        CHECK(e.weight >= 1);
        CHECK(e.weight < 100);
        CHECK(e.weight == std::floor(e.weight));
        mirrored.push_back({e.dst, e.src, e.weight});
      }
      CHECK(sorted_arcs(mirrored) == sorted_arcs(g.arcs()));
    }
  }
  SUBCASE("same seed, same weights") {
    const auto g = random_graph(40, 200, 3, true);
    CHECK(generate_weights(g, 9, 0, 1) == generate_weights(g, 9, 0, 1));
  }
  SUBCASE("with_weights keeps the transpose aligned") {
    const auto g = random_graph(30, 90, 5, true);
    std::vector<Weight> w(g.edge_count());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = static_cast<Weight>(i + 1);
    const auto gw = g.with_weights(w);
    for (VertexId u = 0; u < gw.vertex_count(); ++u) {
      const auto nbr = gw.in_neighbors(u);
      const auto iw = gw.in_weights(u);
      for (std::size_t j = 0; j < nbr.size(); ++j) {
        const auto on = gw.out_neighbors(nbr[j]);
        const auto ow = gw.out_weights(nbr[j]);
        bool found = false;
        for (std::size_t k = 0; k < on.size(); ++k) found = found || (on[k] == u && ow[k] == iw[j]);
        CHECK(found);
      }
    }
  }
}

TEST_CASE("synthetic generators") {
  const auto r = generate_rmat(8, 4, 1, true);
  CHECK(r.vertex_count == 256);
  CHECK(r.edges.size() == 1024);
  CHECK(generate_rmat(8, 4, 1, true).edges == r.edges);
  const auto u = generate_uniform(100, 500, 2, false);
  CHECK(u.edges.size() == 500);
  for (const auto& e : u.edges) CHECK(e.src < 100);
}
