#include <accx/parallel.hpp>
#include <accx/task_manager.hpp>

#include <sstream>

namespace accx {

const char* to_string(TaskClass c) {
  switch (c) {
    case TaskClass::small: return "small";
    case TaskClass::medium: return "medium";
    case TaskClass::large: return "large";
  }
  return "?";
}

const char* to_string(FilterKind f) {
  switch (f) {
    case FilterKind::online: return "online";
    case FilterKind::ballot: return "ballot";
    case FilterKind::batch: return "batch";
  }
  return "?";
}

void Separators::validate() const {
  if (small_limit == 0 || small_limit >= large_limit)
    throw InvalidArgument("separators must satisfy 0 < small < large");
}

TaskClass classify(std::uint64_t degree, const Separators& seps) {
  if (degree < seps.small_limit) return TaskClass::small;
  if (degree < seps.large_limit) return TaskClass::medium;
  return TaskClass::large;
}

std::vector<VertexId> ActiveLists::flatten() const {
  std::vector<VertexId> out;
  out.reserve(size());
  out.insert(out.end(), small.begin(), small.end());
  out.insert(out.end(), medium.begin(), medium.end());
  out.insert(out.end(), large.begin(), large.end());
  return out;
}

ActiveLists ActiveLists::from_vertices(std::span<const VertexId> vs, DegreeView degrees, const Separators& seps) {
  ActiveLists out;
  for (auto v : vs) out.add(v, degrees(v), seps);
  return out;
}

namespace {

void append(ActiveLists& dst, const ActiveLists& src) {
  dst.small.insert(dst.small.end(), src.small.begin(), src.small.end());
  dst.medium.insert(dst.medium.end(), src.medium.begin(), src.medium.end());
  dst.large.insert(dst.large.end(), src.large.begin(), src.large.end());
  dst.small_degree += src.small_degree;
  dst.medium_degree += src.medium_degree;
  dst.large_degree += src.large_degree;
}

}  // namespace

ActiveLists ballot_filter(std::span<const std::uint8_t> flags, DegreeView degrees, unsigned worker_count,
                          const Separators& seps) {
  const auto part = VertexPartition::equal(flags.size(), worker_count);
  std::vector<ActiveLists> local(part.parts());
  parallel_for_workers(part.parts(), [&](unsigned w) {
    auto& out = local[w];
    for (auto v = part.begin(w); v < part.end(w); ++v)
      if (flags[v]) out.add(static_cast<VertexId>(v), degrees(static_cast<VertexId>(v)), seps);
  });
  ActiveLists result;
  std::size_t ns = 0, nm = 0, nl = 0;
  for (const auto& l : local) {
    ns += l.small.size();
    nm += l.medium.size();
    nl += l.large.size();
  }
  result.small.reserve(ns);
  result.medium.reserve(nm);
  result.large.reserve(nl);
  for (const auto& l : local) append(result, l);
  return result;
}

std::vector<std::size_t> bin_offsets(std::span<const ThreadBin> bins) {
  std::vector<std::size_t> off(bins.size() + 1, 0);
  for (std::size_t i = 0; i < bins.size(); ++i) off[i + 1] = off[i] + bins[i].size();
  return off;
}

ActiveLists concat_bins(std::span<const ThreadBin> bins, DegreeView degrees, const Separators& seps) {
  for (const auto& b : bins)
    if (b.overflowed())
      throw ContractViolation("concat_bins called with overflowed bin of worker " + std::to_string(b.owner()));
  const auto off = bin_offsets(bins);
  std::vector<VertexId> flat(off.back());
  for (std::size_t i = 0; i < bins.size(); ++i) std::copy(bins[i].entries().begin(), bins[i].entries().end(), flat.begin() + off[i]);
  return ActiveLists::from_vertices(flat, degrees, seps);
}

void JitController::note(FilterKind filter, const ActiveLists& lists, bool overflow) {
  mode_ = filter;
  trace_.push_back({static_cast<std::uint32_t>(trace_.size() + 1), filter, lists.small.size(), lists.medium.size(),
                    lists.large.size(), overflow});
}

ActiveLists jit_step(JitController& ctrl, std::span<const ThreadBin> bins, std::span<const std::uint8_t> flags,
                     DegreeView degrees, unsigned worker_count, const Separators& seps) {
  bool overflow = false;
  for (const auto& b : bins) overflow = overflow || b.overflowed();
  ActiveLists next = overflow ? ballot_filter(flags, degrees, worker_count, seps) : concat_bins(bins, degrees, seps);
  ctrl.note(overflow ? FilterKind::ballot : FilterKind::online, next, overflow);
  return next;
}

std::string jit_trace_csv(std::span<const JitTraceRow> rows) {
  std::ostringstream os;
  os << "iteration,filter,small,medium,large,overflow\n";
  for (const auto& r : rows)
    os << r.iteration << ',' << to_string(r.filter) << ',' << r.small << ',' << r.medium << ',' << r.large << ','
       << (r.overflow ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace accx
