#include <accx/fusion.hpp>

#include <doctest.h>
#include <json.hpp>

#include <random>
#include <sstream>

using namespace accx;

namespace {

KernelCost regs(std::uint64_t n) { return {"k", n, {}}; }

std::uint64_t changes(const std::vector<Direction>& p) {
  std::uint64_t c = 0;
  for (std::size_t i = 1; i < p.size(); ++i) c += p[i] != p[i - 1];
  return c;
}

}  // namespace

TEST_CASE("max_resident_ctas") {
  CHECK(max_resident_ctas(k40_profile(), regs(110)) == 60);
  CHECK(max_resident_ctas(k40_profile(), regs(48)) == 150);
  CHECK(k20_profile().registers_per_smx == 32768);
  CHECK(max_resident_ctas(k20_profile(), regs(110)) == 2 * 13);
  const DeviceProfile tiny{"tiny", 128, 1, 128};
  CHECK(max_resident_ctas(tiny, regs(2)) == 0);
  CHECK_THROWS_AS(checked_resident_ctas(tiny, {"fat", 2, {}}), OccupancyError);
  try {
    checked_resident_ctas(tiny, {"fat", 2, {}});
  } catch (const OccupancyError& e) {
    CHECK(std::string(e.what()).find("fat") != std::string::npos);
  }
  CHECK_THROWS_AS(max_resident_ctas({"bad", 0, 1, 1}, regs(1)), InvalidArgument);
}

TEST_CASE("property: occupancy monotonicity") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    DeviceProfile p{"r", 1024 + rng() % 200000, 1 + rng() % 30, 32 * (1 + rng() % 16)};
    const std::uint64_t r = 1 + rng() % 255;
    CHECK(max_resident_ctas(p, regs(r + 1)) <= max_resident_ctas(p, regs(r)));
    auto bigger = p;
    bigger.registers_per_smx += 1 + rng() % 10000;
    CHECK(max_resident_ctas(bigger, regs(r)) >= max_resident_ctas(p, regs(r)));
  }
}

TEST_CASE("simulate_barrier") {
  CHECK(simulate_barrier(60, 60, 5).completed);
  CHECK(simulate_barrier(60, 60, 5).rounds_completed == 5);
  const auto dead = simulate_barrier(61, 60, 1);
  CHECK_FALSE(dead.completed);
  CHECK(dead.deadlock_round == 1);
  CHECK(dead.resident == 60);
  CHECK(simulate_barrier(1, 1, 3).completed);
  CHECK_THROWS_AS(simulate_barrier(0, 4, 1), InvalidArgument);
  SUBCASE("property: completes iff launched fits") {
    std::mt19937_64 rng(8);
    for (std::uint64_t cap : {1u, 4u, 60u, 150u})
      for (std::uint64_t c = 1; c <= 2 * cap; ++c) {
        const auto rounds = 1 + rng() % 6;
        const auto out = simulate_barrier(c, cap, rounds);
        CHECK(out.completed == (c <= cap));
        if (!out.completed) CHECK(out.deadlock_round == 1);
      }
  }
}

TEST_CASE("plan_fusion") {
  const auto bfs = parse_phase_trace("push,pull*5,push");
  CHECK(plan_fusion(bfs, FusionStrategy::selective).launch_count == 3);
  CHECK(plan_fusion(bfs, FusionStrategy::all).launch_count == 1);
  CHECK(plan_fusion(bfs, FusionStrategy::none).launch_count == 28);
  const std::vector<Direction> long_run(10172, Direction::pull);
  CHECK(plan_fusion(long_run, FusionStrategy::none).launch_count == 40688);
  CHECK_THROWS_AS(plan_fusion(std::vector<Direction>{}, FusionStrategy::all), InvalidArgument);
  SUBCASE("property: all <= selective <= none, selective = 1 + changes") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<Direction> p(1 + rng() % 60);
      for (auto& d : p) d = rng() % 2 ? Direction::push : Direction::pull;
      const auto none = plan_fusion(p, FusionStrategy::none).launch_count;
      const auto sel = plan_fusion(p, FusionStrategy::selective).launch_count;
      const auto all = plan_fusion(p, FusionStrategy::all).launch_count;
      CHECK(all <= sel);
      CHECK(sel <= none);
      CHECK(sel == 1 + changes(p));
    }
  }
}

TEST_CASE("phase trace parsing") {
  CHECK(parse_phase_trace("push pull") == std::vector<Direction>{Direction::push, Direction::pull});
  CHECK(parse_phase_trace("pull*3").size() == 3);
  CHECK_THROWS_AS(parse_phase_trace("sideways"), InvalidArgument);
}

TEST_CASE("fused_register_cost") {
  const auto costs = default_kernel_costs();
  std::vector<KernelCost> push;
  for (const char* k : {"push.thread", "push.warp", "push.cta", "push.task"}) push.push_back(costs.at(k));
  CHECK(fused_register_cost(push, CostMode::measured, 110).registers_per_thread == 110);
  CHECK(fused_register_cost(push, CostMode::measured, 48).registers_per_thread == 48);
  const auto est = fused_register_cost(push, CostMode::sum);
  CHECK(est.registers_per_thread == 105);
  CHECK(est.note.find("[28, 105]") != std::string::npos);
  CHECK_THROWS_AS(fused_register_cost(push, CostMode::measured), InvalidArgument);
  CHECK_THROWS_AS(fused_register_cost(std::vector<KernelCost>{}, CostMode::sum), InvalidArgument);
}

TEST_CASE("plan reports") {
  const auto costs = default_kernel_costs();
  const std::vector<Direction> phases{Direction::push, Direction::pull, Direction::push};
  SUBCASE("all fusion on k40") {
    const auto r = build_plan_report(phases, FusionStrategy::all, k40_profile(), costs);
    REQUIRE(r.cta_counts.size() == 1);
    CHECK(r.cta_counts[0] == 60);
    CHECK(r.verdicts[0].completed);
    const auto j = nlohmann::json::parse(plan_report_json(r));
    CHECK(j["launch_count"] == 1);
    CHECK(j["verdict"] == "completed");
    CHECK(j["launches"][0]["cta_count"] == 60);
  }
  SUBCASE("override beyond capacity deadlocks") {
    const auto r = build_plan_report(phases, FusionStrategy::all, k40_profile(), costs, 61);
    CHECK_FALSE(r.verdicts[0].completed);
    CHECK(nlohmann::json::parse(plan_report_json(r))["verdict"] == "deadlocked");
  }
  SUBCASE("selective uses the per-direction fused kernels") {
    const auto r = build_plan_report(phases, FusionStrategy::selective, k40_profile(), costs);
    REQUIRE(r.kernel_costs.size() == 3);
    CHECK(r.kernel_costs[0].registers_per_thread == 48);
    CHECK(r.kernel_costs[1].registers_per_thread == 50);
    CHECK(r.cta_counts[0] == 150);
  }
  SUBCASE("missing fused entry falls back to an estimate") {
    auto partial = costs;
    partial.erase("fused.all");
    const auto r = build_plan_report(phases, FusionStrategy::all, k40_profile(), partial);
    CHECK(r.kernel_costs[0].registers_per_thread == 105 + 100);
    CHECK_FALSE(r.kernel_costs[0].note.empty());
  }
  SUBCASE("zero occupancy names the kernel") {
    const DeviceProfile tiny{"tiny", 4096, 1, 128};
    CHECK_THROWS_WITH_AS(build_plan_report(phases, FusionStrategy::all, tiny, costs),
                         doctest::Contains("fused.all"), OccupancyError);
  }
}

TEST_CASE("profile and cost files") {
  std::istringstream p("# device\nname = test\nregisters_per_smx=32768\nsmx_count=2\n");
  const auto prof = parse_profile(p);
  CHECK(prof.name == "test");
  CHECK(prof.smx_count == 2);
  CHECK(prof.threads_per_cta == 128);
  std::istringstream bad("smx_count=0\n");
  CHECK_THROWS_AS(parse_profile(bad), InvalidArgument);
  std::istringstream unknown("colour=blue\n");
  CHECK_THROWS_AS(parse_profile(unknown), InvalidArgument);
  std::istringstream noeq("smx_count\n");
  CHECK_THROWS_AS(parse_profile(noeq), ParseError);
  std::istringstream c("fused.all = 96\n");
  CHECK(parse_costs(c).at("fused.all").registers_per_thread == 96);
  CHECK(load_profile("k20").name == "k20");
  CHECK_THROWS_AS(load_profile("/nonexistent/profile"), Error);
}
