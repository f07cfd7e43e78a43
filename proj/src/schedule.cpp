#include <accx/schedule.hpp>

#include <algorithm>
#include <numeric>

namespace accx {

std::size_t WorkAssignment::task_count() const noexcept {
  std::size_t n = 0;
  for (const auto& w : per_worker) n += w.size();
  return n;
}

std::uint64_t WorkAssignment::max_load() const noexcept {
  return loads.empty() ? 0 : *std::max_element(loads.begin(), loads.end());
}

double WorkAssignment::mean_load() const noexcept {
  if (loads.empty()) return 0.0;
  return static_cast<double>(std::accumulate(loads.begin(), loads.end(), std::uint64_t{0})) /
         static_cast<double>(loads.size());
}

WorkAssignment schedule_tasks(const ActiveLists& lists, std::span<const EdgeId> offsets, unsigned worker_count,
                              const Separators& seps) {
  worker_count = std::max(1u, worker_count);
  std::vector<Task> tasks;
  tasks.reserve(lists.size() + lists.medium_degree / seps.small_limit + lists.large_degree / seps.large_limit);
  for (auto v : lists.small) tasks.push_back({v, offsets[v], offsets[v + 1]});
  auto chunked = [&](const std::vector<VertexId>& vs, std::uint64_t grain) {
    for (auto v : vs)
      for (auto b = offsets[v]; b < offsets[v + 1]; b += grain) tasks.push_back({v, b, std::min(b + grain, offsets[v + 1])});
  };
  chunked(lists.medium, seps.small_limit);
  chunked(lists.large, seps.large_limit);

  WorkAssignment out;
  out.per_worker.resize(worker_count);
  out.loads.assign(worker_count, 0);
  std::uint64_t total = 0;
  for (const auto& t : tasks) total += t.edges();
  std::uint64_t prefix = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& t = tasks[i];
    const auto w = total ? static_cast<unsigned>(std::min<std::uint64_t>(
                               (static_cast<unsigned __int128>(prefix) * worker_count / total), worker_count - 1))
                         : static_cast<unsigned>(i * worker_count / tasks.size());
    out.per_worker[w].push_back(t);
    out.loads[w] += t.edges();
    prefix += t.edges();
  }
  return out;
}

Direction direction_select(std::uint64_t frontier_out_edges, std::uint64_t edge_count, double alpha) {
  return static_cast<double>(frontier_out_edges) > static_cast<double>(edge_count) / alpha ? Direction::pull
                                                                                           : Direction::push;
}

}  // namespace accx
