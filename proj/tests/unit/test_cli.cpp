#include <accx/cli.hpp>
#include <accx/graph.hpp>

#include <doctest.h>
#include <json.hpp>

#include "helpers.hpp"

#include <fstream>
#include <sstream>

using namespace accx;
using namespace accx::testing;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) { return std::string(ACCX_TEST_TMP) + "/" + name; }

std::string write(const std::string& name, const std::string& text) {
  const auto p = tmp(name);
  std::ofstream(p) << text;
  return p;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("cli convert") {
  const auto tri = write("tri.txt", "0 1\n1 2\n2 0\n");
  const auto r = invoke({"convert", tri, tmp("tri.bin")});
  CHECK(r.code == 0);
  CHECK(r.out == "V=3 E=6\n");
  CHECK(read_binary_file(tmp("tri.bin")) == from_text("0 1\n1 2\n2 0\n", false));

  const auto wd = write("wd.txt", "0 1 2.5\n1 2 0.5\n");
  CHECK(invoke({"convert", wd, tmp("wd.bin"), "--directed", "--reverse"}).code == 0);
  const auto g = read_binary_file(tmp("wd.bin"));
  CHECK(g.has_reverse());
  CHECK(g.weighted());
  CHECK(g == from_text("0 1 2.5\n1 2 0.5\n", true, true));

  const auto bad = write("bad.txt", "0 1\nfoo\n");
  const auto e = invoke({"convert", bad, tmp("bad.bin")});
  CHECK(e.code == 2);
  CHECK(e.err.find("line 2") != std::string::npos);
}

TEST_CASE("cli run") {
  const auto path = write("path.txt", "0 1\n1 2\n2 3\n3 4\n");
  SUBCASE("bfs verify") {
    const auto r = invoke({"run", "bfs", path, "--verify"});
    CHECK(r.code == 0);
    CHECK(r.out.find("verify: PASS") != std::string::npos);
  }
  SUBCASE("zero weight is rejected") {
    const auto z = write("zero.txt", "0 1 0\n1 2 3\n");
    const auto r = invoke({"run", "sssp", z});
    CHECK(r.code == 2);
    CHECK(r.err.find("non-positive weight") != std::string::npos);
  }
  SUBCASE("pagerank verify on a random graph") {
    CHECK(invoke({"--seed", "3", "gen", "uniform", tmp("u.bin"), "--vertices", "400", "--edges", "3000", "--directed",
               "--reverse"})
              .code == 0);
    const auto r = invoke({"--workers", "2", "run", "pagerank", tmp("u.bin"), "--verify"});
    CHECK(r.code == 0);
    CHECK(r.out.find("verify: PASS") != std::string::npos);
  }
  SUBCASE("trace rows match iterations") {
    const auto r = invoke({"--json", "run", "bfs", path, "--trace", tmp("trace.csv"), "--verify"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    std::ifstream in(tmp("trace.csv"));
    std::string all((std::istreambuf_iterator<char>(in)), {});
    CHECK(all.rfind("iteration,direction,filter,small,medium,large\n", 0) == 0);
    CHECK(lines(all) == 1 + j["stats"]["iterations"].size());
    CHECK(j["verify"]["pass"] == true);
    CHECK(j["graph"]["edges"] == 8);
  }
  SUBCASE("no verdict without --verify") {
    const auto r = invoke({"--json", "run", "bfs", path});
    CHECK_FALSE(nlohmann::json::parse(r.out).contains("verify"));
  }
  SUBCASE("csv output and repeats") {
    const auto r = invoke({"--csv", "--repeat", "3", "run", "kcore", path, "--k", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("iteration,direction", 0) == 0);
    const auto t = invoke({"--repeat", "3", "run", "bfs", path});
    CHECK(t.out.find("over 3 run(s)") != std::string::npos);
  }
  SUBCASE("every algorithm verifies") {
    CHECK(invoke({"--seed", "5", "gen", "rmat", tmp("r.bin"), "--scale", "9", "--edge-factor", "8", "--weights", "1,10",
               "--integer-weights"})
              .code == 0);
    for (const char* alg : {"bfs", "sssp", "kcore", "pagerank", "bp"})
      for (const char* filter : {"jit", "ballot", "batch"}) {
        const auto r = invoke({"--workers", "3", "run", alg, tmp("r.bin"), "--verify", "--filter", filter, "--k", "4"});
        CHECK_MESSAGE(r.code == 0, alg, " ", filter, ": ", r.out, r.err);
      }
  }
  SUBCASE("pull without reverse structure") {
    const auto d = write("dir.txt", "0 1\n1 2\n");
    const auto r = invoke({"run", "bfs", d, "--directed", "--direction", "pull"});
    CHECK(r.code == 2);
    CHECK(r.err.find("reverse") != std::string::npos);
    CHECK(invoke({"run", "bfs", d, "--directed", "--direction", "pull", "--build-reverse"}).code == 0);
  }
  SUBCASE("bad arguments") {
    CHECK(invoke({"run", "nosuch", path}).code == 2);
    CHECK(invoke({"run", "bfs", tmp("missing.txt")}).code == 2);
    CHECK(invoke({"run", "bfs", path, "--source", "99"}).code == 2);
    CHECK(invoke({}).code == 2);
  }
}

TEST_CASE("cli plan") {
  SUBCASE("k40 all fusion") {
    const auto r = invoke({"plan", "--profile", "k40", "--phases", "push,pull,push", "--strategy", "all"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["launch_count"] == 1);
    CHECK(j["launches"][0]["cta_count"] == 60);
    CHECK(j["verdict"] == "completed");
  }
  SUBCASE("override deadlocks") {
    const auto r = invoke({"plan", "--phases", "push,pull,push", "--strategy", "all", "--override", "61"});
    CHECK(nlohmann::json::parse(r.out)["verdict"] == "deadlocked");
  }
  SUBCASE("trace from a real bfs run") {
    CHECK(invoke({"--seed", "2", "gen", "rmat", tmp("p.bin"), "--scale", "12", "--edge-factor", "16"}).code == 0);
    REQUIRE(invoke({"run", "bfs", tmp("p.bin"), "--trace", tmp("p.csv")}).code == 0);
    std::ifstream in(tmp("p.csv"));
    std::string line;
    std::getline(in, line);
    std::vector<std::string> dirs;
    while (std::getline(in, line)) dirs.push_back(line.substr(line.find(',') + 1, 4));
    std::size_t changes = 0;
    for (std::size_t i = 1; i < dirs.size(); ++i) changes += dirs[i] != dirs[i - 1];
    const auto r = invoke({"plan", "--trace", tmp("p.csv"), "--strategy", "selective"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["launch_count"] == 1 + changes);
  }
  SUBCASE("algorithm and graph") {
    const auto r = invoke({"plan", "--algorithm", "bfs", "--graph", tmp("p.bin"), "--strategy", "none"});
    if (r.code == 0) CHECK(nlohmann::json::parse(r.out)["strategy"] == "none");
  }
  SUBCASE("zero occupancy names the kernel") {
    const auto prof = write("tiny.profile", "name=tiny\nregisters_per_smx=4096\nsmx_count=1\n");
    const auto r = invoke({"plan", "--profile", prof, "--phases", "push", "--strategy", "all"});
    CHECK(r.code == 2);
    CHECK(r.err.find("fused.all") != std::string::npos);
  }
  SUBCASE("custom costs") {
    const auto costs = write("costs.txt", "fused.all=48\n");
    const auto r = invoke({"plan", "--costs", costs, "--phases", "pull", "--strategy", "all"});
    CHECK(nlohmann::json::parse(r.out)["launches"][0]["cta_count"] == 150);
  }
}

TEST_CASE("cli gen") {
  const auto r = invoke({"--seed", "1", "gen", "uniform", tmp("g.txt"), "--vertices", "10", "--edges", "20", "--text"});
  CHECK(r.code == 0);
  CHECK(r.out == "V=10 E=40\n");
  const auto again = build_csr(load_edge_list_file(tmp("g.txt"), false), false);
  CHECK(again.edge_count() == 40);
  const auto a = invoke({"--seed", "7", "gen", "rmat", tmp("a.bin"), "--scale", "6"});
  const auto b = invoke({"--seed", "7", "gen", "rmat", tmp("b.bin"), "--scale", "6"});
  CHECK(read_binary_file(tmp("a.bin")) == read_binary_file(tmp("b.bin")));
}
