#pragma once

// Occupancy and kernel-fusion model for a persistent-kernel GPU deployment.
// Nothing here runs on a device: profiles and register costs are inputs.

#include <accx/types.hpp>

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace accx {

struct DeviceProfile {
  std::string name = "custom";
  std::uint64_t registers_per_smx = 65536;
  std::uint64_t smx_count = 15;
  std::uint64_t threads_per_cta = 128;

  void validate() const;
};

DeviceProfile k40_profile();
DeviceProfile k20_profile();

struct KernelCost {
  std::string name;
  std::uint64_t registers_per_thread = 0;
  std::string note;  // set for estimated costs
};

/// Register counts per kernel: thread/warp/cta/task kernels of each
/// direction plus the measured fused variants.
std::map<std::string, KernelCost> default_kernel_costs();

/// Plain key=value files. Profile keys: name, registers_per_smx, smx_count,
/// threads_per_cta. Cost files map kernel name to registers per thread.
DeviceProfile parse_profile(std::istream& in);
DeviceProfile load_profile(const std::string& path_or_builtin);
std::map<std::string, KernelCost> parse_costs(std::istream& in);
std::map<std::string, KernelCost> load_costs(const std::string& path);

/// floor(registers_per_smx / (registers_per_thread * threads_per_cta)) * smx_count.
/// Zero means the kernel cannot run at this CTA width.
std::uint64_t max_resident_ctas(const DeviceProfile& p, const KernelCost& k);

class OccupancyError : public Error {
 public:
  using Error::Error;
};

/// As max_resident_ctas, but a zero result throws OccupancyError naming the kernel.
std::uint64_t checked_resident_ctas(const DeviceProfile& p, const KernelCost& k);

struct BarrierOutcome {
  bool completed = false;
  std::uint64_t deadlock_round = 0;  // 1-based; 0 when completed
  std::uint64_t resident = 0;
  std::uint64_t rounds_completed = 0;
};

/// Round-based model of the monitor/worker lock-array barrier. CTA 0 is the
/// monitor. CTAs become resident in launch order while slots are free and
/// stay resident until the kernel ends, so the spin barrier can only be
/// released when every CTA fits.
BarrierOutcome simulate_barrier(std::uint64_t launched_ctas, std::uint64_t resident_capacity,
                                std::uint64_t barrier_rounds);

enum class FusionStrategy : std::uint8_t { none, selective, all };

const char* to_string(FusionStrategy s);
FusionStrategy parse_fusion_strategy(const std::string& s);

inline constexpr std::uint64_t kKernelsPerIteration = 4;  // thread, warp, CTA, task management

struct Launch {
  std::vector<std::string> kernels;
  std::uint64_t iterations = 0;
  std::optional<Direction> direction;  // phase direction for selective launches
};

struct FusionPlan {
  FusionStrategy strategy = FusionStrategy::none;
  std::uint64_t launch_count = 0;
  std::vector<Launch> launches;  // one entry per distinct launch group; none uses one per iteration
};

FusionPlan plan_fusion(std::span<const Direction> phases, FusionStrategy strategy);

enum class CostMode : std::uint8_t { sum, measured };

/// measured: passes `measured` through (required). sum: total of the parts,
/// noted as an upper bound in [max, sum].
KernelCost fused_register_cost(std::span<const KernelCost> kernels, CostMode mode,
                               std::optional<std::uint64_t> measured = std::nullopt);

/// Register cost of the fused kernel(s) a strategy runs for a given launch.
KernelCost launch_cost(const std::map<std::string, KernelCost>& costs, FusionStrategy strategy,
                       std::optional<Direction> direction);

struct PlanReport {
  FusionPlan plan;
  DeviceProfile profile;
  std::vector<KernelCost> kernel_costs;  // per launch group
  std::vector<std::uint64_t> cta_counts;
  std::vector<std::uint64_t> launched_ctas;
  std::vector<BarrierOutcome> verdicts;
};

/// Plan plus occupancy and barrier verdict per launch group. override_ctas
/// replaces the launched CTA count (to demonstrate deadlock).
PlanReport build_plan_report(std::span<const Direction> phases, FusionStrategy strategy, const DeviceProfile& p,
                             const std::map<std::string, KernelCost>& costs,
                             std::optional<std::uint64_t> override_ctas = std::nullopt);

std::string plan_report_json(const PlanReport& r, int indent = 2);

/// Comma- or space-separated push/pull tokens; "pull*N" repeats a token.
std::vector<Direction> parse_phase_trace(const std::string& text);

}  // namespace accx
