#include <accx/fusion.hpp>

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace accx {

void DeviceProfile::validate() const {
  if (registers_per_smx == 0 || smx_count == 0 || threads_per_cta == 0)
    throw InvalidArgument("device profile values must be positive");
}

DeviceProfile k40_profile() { return {"k40", 65536, 15, 128}; }
DeviceProfile k20_profile() { return {"k20", 32768, 13, 128}; }

std::map<std::string, KernelCost> default_kernel_costs() {
  const std::pair<const char*, std::uint64_t> table[] = {
      {"push.thread", 26}, {"push.warp", 27}, {"push.cta", 28}, {"push.task", 24},
      {"pull.thread", 24}, {"pull.warp", 24}, {"pull.cta", 22}, {"pull.task", 30},
      {"fused.push", 48},  {"fused.pull", 50}, {"fused.all", 110},
  };
  std::map<std::string, KernelCost> out;
  for (const auto& [name, regs] : table) out[name] = {name, regs, {}};
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

/// key=value lines; '#' comments and blank lines ignored.
std::vector<std::pair<std::string, std::string>> parse_kv(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(n, "expected key=value");
    auto key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(n, "empty key");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

std::uint64_t parse_count(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw InvalidArgument("'" + key + "' expects a non-negative integer, got '" + v + "'");
  return x;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

}  // namespace

DeviceProfile parse_profile(std::istream& in) {
  DeviceProfile p;
  for (const auto& [k, v] : parse_kv(in)) {
    if (k == "name") p.name = v;
    else if (k == "registers_per_smx") p.registers_per_smx = parse_count(k, v);
    else if (k == "smx_count") p.smx_count = parse_count(k, v);
    else if (k == "threads_per_cta") p.threads_per_cta = parse_count(k, v);
    else throw InvalidArgument("unknown profile key '" + k + "'");
  }
  p.validate();
  return p;
}

DeviceProfile load_profile(const std::string& path_or_builtin) {
  if (path_or_builtin == "k40") return k40_profile();
  if (path_or_builtin == "k20") return k20_profile();
  auto in = open(path_or_builtin);
  return parse_profile(in);
}

std::map<std::string, KernelCost> parse_costs(std::istream& in) {
  std::map<std::string, KernelCost> out;
  for (const auto& [k, v] : parse_kv(in)) {
    const auto regs = parse_count(k, v);
    if (regs == 0) throw InvalidArgument("kernel '" + k + "' needs a positive register count");
    out[k] = {k, regs, {}};
  }
  return out;
}

std::map<std::string, KernelCost> load_costs(const std::string& path) {
  auto in = open(path);
  return parse_costs(in);
}

std::uint64_t max_resident_ctas(const DeviceProfile& p, const KernelCost& k) {
  p.validate();
  if (k.registers_per_thread == 0) throw InvalidArgument("kernel '" + k.name + "' has no register count");
  return p.registers_per_smx / (k.registers_per_thread * p.threads_per_cta) * p.smx_count;
}

std::uint64_t checked_resident_ctas(const DeviceProfile& p, const KernelCost& k) {
  const auto n = max_resident_ctas(p, k);
  if (n == 0)
    throw OccupancyError("kernel '" + k.name + "' exceeds per-SMX register capacity at this CTA width (" +
                         std::to_string(k.registers_per_thread) + " regs/thread x " +
                         std::to_string(p.threads_per_cta) + " threads > " + std::to_string(p.registers_per_smx) +
                         ")");
  return n;
}

BarrierOutcome simulate_barrier(std::uint64_t launched_ctas, std::uint64_t resident_capacity,
                                std::uint64_t barrier_rounds) {
  if (launched_ctas == 0) throw InvalidArgument("simulate_barrier needs at least one CTA");
  enum class Slot : std::uint8_t { pending, resident };
  enum class Lock : std::uint8_t { departure, arrival };
  std::vector<Slot> slot(launched_ctas, Slot::pending);
  std::vector<Lock> lock(launched_ctas, Lock::departure);
  BarrierOutcome out;
  // The scheduler fills free slots in launch order; slots only free when a
  // CTA exits, which happens after the last barrier.
  for (std::uint64_t c = 0; c < launched_ctas && out.resident < resident_capacity; ++c) {
    slot[c] = Slot::resident;
    ++out.resident;
  }
  for (std::uint64_t round = 1; round <= barrier_rounds; ++round) {
    bool released = false;
    while (!released) {
      bool progress = false;
      for (std::uint64_t c = 1; c < launched_ctas; ++c)
        if (slot[c] == Slot::resident && lock[c] == Lock::departure) {
          lock[c] = Lock::arrival;
          progress = true;
        }
      const bool all_arrived =
          std::all_of(lock.begin() + 1, lock.end(), [](Lock l) { return l == Lock::arrival; });
      if (slot[0] == Slot::resident && all_arrived) {
        std::fill(lock.begin(), lock.end(), Lock::departure);
        released = true;
      } else if (!progress) {
        // everyone resident spins; no slot can free, so nothing can change
        out.deadlock_round = round;
        return out;
      }
    }
    ++out.rounds_completed;
  }
  out.completed = true;
  return out;
}

const char* to_string(FusionStrategy s) {
  switch (s) {
    case FusionStrategy::none: return "none";
    case FusionStrategy::selective: return "selective";
    case FusionStrategy::all: return "all";
  }
  return "?";
}

FusionStrategy parse_fusion_strategy(const std::string& s) {
  if (s == "none") return FusionStrategy::none;
  if (s == "selective") return FusionStrategy::selective;
  if (s == "all") return FusionStrategy::all;
  throw InvalidArgument("unknown fusion strategy '" + s + "' (expected none, selective or all)");
}

namespace {

std::vector<std::string> per_iteration_kernels(Direction d) {
  const std::string p = to_string(d);
  return {p + ".thread", p + ".warp", p + ".cta", p + ".task"};
}

}  // namespace

FusionPlan plan_fusion(std::span<const Direction> phases, FusionStrategy strategy) {
  if (phases.empty()) throw InvalidArgument("phase sequence is empty");
  FusionPlan plan;
  plan.strategy = strategy;
  switch (strategy) {
    case FusionStrategy::none:
      // consecutive iterations in one direction share a launch group entry
      for (std::size_t i = 0; i < phases.size();) {
        std::size_t j = i;
        while (j < phases.size() && phases[j] == phases[i]) ++j;
        plan.launches.push_back({per_iteration_kernels(phases[i]), j - i, phases[i]});
        i = j;
      }
      plan.launch_count = phases.size() * kKernelsPerIteration;
      break;
    case FusionStrategy::selective:
      for (std::size_t i = 0; i < phases.size();) {
        std::size_t j = i;
        while (j < phases.size() && phases[j] == phases[i]) ++j;
        plan.launches.push_back({{std::string("fused.") + to_string(phases[i])}, j - i, phases[i]});
        i = j;
      }
      plan.launch_count = plan.launches.size();
      break;
    case FusionStrategy::all:
      plan.launches.push_back({{"fused.all"}, phases.size(), std::nullopt});
      plan.launch_count = 1;
      break;
  }
  return plan;
}

KernelCost fused_register_cost(std::span<const KernelCost> kernels, CostMode mode, std::optional<std::uint64_t> measured) {
  if (kernels.empty()) throw InvalidArgument("fused_register_cost needs at least one kernel");
  std::string name;
  std::uint64_t sum = 0, hi = 0;
  for (const auto& k : kernels) {
    name += (name.empty() ? "" : "+") + k.name;
    sum += k.registers_per_thread;
    hi = std::max(hi, k.registers_per_thread);
  }
  if (mode == CostMode::measured) {
    if (!measured) throw InvalidArgument("measured mode needs a register count");
    return {name, *measured, {}};
  }
  return {name, sum,
          "upper bound: actual cost lies in [" + std::to_string(hi) + ", " + std::to_string(sum) + "]"};
}

KernelCost launch_cost(const std::map<std::string, KernelCost>& costs, FusionStrategy strategy,
                       std::optional<Direction> direction) {
  auto find = [&](const std::string& name) -> std::optional<KernelCost> {
    const auto it = costs.find(name);
    if (it == costs.end()) return std::nullopt;
    return it->second;
  };
  const std::string dir = direction ? to_string(*direction) : "push";
  if (strategy == FusionStrategy::none) {
    // separate launches: occupancy is bound by the hungriest kernel
    KernelCost worst{dir + ".*", 0, {}};
    for (const auto& k : per_iteration_kernels(direction.value_or(Direction::push))) {
      const auto c = find(k);
      if (!c) throw InvalidArgument("cost table has no entry for kernel '" + k + "'");
      if (c->registers_per_thread > worst.registers_per_thread) worst = *c;
    }
    return worst;
  }
  const std::string fused = strategy == FusionStrategy::all ? "fused.all" : "fused." + dir;
  if (auto c = find(fused)) return *c;
  // no measured entry: estimate from the parts
  std::vector<KernelCost> parts;
  const std::vector<Direction> dirs = strategy == FusionStrategy::all
                                          ? std::vector<Direction>{Direction::push, Direction::pull}
                                          : std::vector<Direction>{direction.value_or(Direction::push)};
  for (auto d : dirs)
    for (const auto& k : per_iteration_kernels(d)) {
      const auto c = find(k);
      if (!c) throw InvalidArgument("cost table has no entry for kernel '" + k + "' or '" + fused + "'");
      parts.push_back(*c);
    }
  auto est = fused_register_cost(parts, CostMode::sum);
  est.name = fused;
  return est;
}

PlanReport build_plan_report(std::span<const Direction> phases, FusionStrategy strategy, const DeviceProfile& p,
                             const std::map<std::string, KernelCost>& costs, std::optional<std::uint64_t> override_ctas) {
  PlanReport r;
  r.plan = plan_fusion(phases, strategy);
  r.profile = p;
  for (const auto& l : r.plan.launches) {
    const auto cost = launch_cost(costs, strategy, l.direction);
    const auto ctas = checked_resident_ctas(p, cost);
    const auto launched = override_ctas.value_or(ctas);
    r.kernel_costs.push_back(cost);
    r.cta_counts.push_back(ctas);
    r.launched_ctas.push_back(launched);
    // unfused kernels end every iteration and need no global barrier
    r.verdicts.push_back(strategy == FusionStrategy::none && !override_ctas
                             ? BarrierOutcome{true, 0, std::min(launched, ctas), 0}
                             : simulate_barrier(launched, ctas, l.iterations));
  }
  return r;
}

std::string plan_report_json(const PlanReport& r, int indent) {
  nlohmann::json launches = nlohmann::json::array();
  for (std::size_t i = 0; i < r.plan.launches.size(); ++i) {
    const auto& l = r.plan.launches[i];
    const auto& v = r.verdicts[i];
    nlohmann::json j{{"kernels", l.kernels},
                     {"iterations", l.iterations},
                     {"registers_per_thread", r.kernel_costs[i].registers_per_thread},
                     {"cta_count", r.cta_counts[i]},
                     {"launched_ctas", r.launched_ctas[i]},
                     {"verdict", v.completed ? "completed" : "deadlocked"}};
    if (l.direction) j["direction"] = to_string(*l.direction);
    if (!v.completed) j["deadlock_round"] = v.deadlock_round;
    if (!r.kernel_costs[i].note.empty()) j["cost_note"] = r.kernel_costs[i].note;
    launches.push_back(std::move(j));
  }
  bool ok = std::all_of(r.verdicts.begin(), r.verdicts.end(), [](const BarrierOutcome& v) { return v.completed; });
  nlohmann::json j{{"strategy", to_string(r.plan.strategy)},
                   {"launch_count", r.plan.launch_count},
                   {"profile",
                    {{"name", r.profile.name},
                     {"registers_per_smx", r.profile.registers_per_smx},
                     {"smx_count", r.profile.smx_count},
                     {"threads_per_cta", r.profile.threads_per_cta}}},
                   {"launches", launches},
                   {"verdict", ok ? "completed" : "deadlocked"}};
  return j.dump(indent);
}

std::vector<Direction> parse_phase_trace(const std::string& text) {
  std::vector<Direction> out;
  std::string tok;
  std::istringstream in(text);
  while (in >> tok) {
    std::istringstream parts(tok);
    std::string t;
    while (std::getline(parts, t, ',')) {
      if (t.empty()) continue;
      // "pull*N" repeats a phase N times
      std::uint64_t times = 1;
      if (const auto star = t.find('*'); star != std::string::npos) {
        times = parse_count("repeat", t.substr(star + 1));
        t.resize(star);
      }
      out.insert(out.end(), times, parse_direction(t));
    }
  }
  return out;
}

}  // namespace accx
