#pragma once

// Frontier construction: per-worker thread bins (online filter), the
// range-scan ballot filter, degree classification and the just-in-time
// controller that picks between the two after every iteration.

#include <accx/graph.hpp>
#include <accx/types.hpp>

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace accx {

inline constexpr std::size_t kDefaultOverflowThreshold = 64;

enum class TaskClass : std::uint8_t { small, medium, large };

const char* to_string(TaskClass c);

/// Degree separators: small < small_limit <= medium < large_limit <= large.
struct Separators {
  std::uint64_t small_limit = 32;
  std::uint64_t large_limit = 128;

  void validate() const;
};

TaskClass classify(std::uint64_t degree, const Separators& seps = {});

/// Worker-private recording buffer. Recording stops at capacity and the bin
/// is marked overflowed; later records are dropped.
class ThreadBin {
 public:
  enum class Record : std::uint8_t { recorded, overflow };
  static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

  explicit ThreadBin(unsigned owner = 0, std::size_t capacity = kDefaultOverflowThreshold)
      : owner_(owner), capacity_(capacity) {}

  Record record(VertexId v) {
    if (overflowed_ || entries_.size() >= capacity_) {
      overflowed_ = true;
      return Record::overflow;
    }
    entries_.push_back(v);
    return Record::recorded;
  }

  void clear() noexcept {
    entries_.clear();
    overflowed_ = false;
  }

  unsigned owner() const noexcept { return owner_; }
  std::size_t capacity() const noexcept { return capacity_; }
  void set_capacity(std::size_t c) noexcept { capacity_ = c; }
  bool overflowed() const noexcept { return overflowed_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const VertexId> entries() const noexcept { return entries_; }

 private:
  unsigned owner_;
  std::size_t capacity_;
  std::vector<VertexId> entries_;
  bool overflowed_ = false;
};

/// Frontier split by expected work. Each list keeps its total degree.
struct ActiveLists {
  std::vector<VertexId> small, medium, large;
  std::uint64_t small_degree = 0, medium_degree = 0, large_degree = 0;

  void add(VertexId v, std::uint64_t degree, const Separators& seps) {
    switch (classify(degree, seps)) {
      case TaskClass::small: small.push_back(v); small_degree += degree; break;
      case TaskClass::medium: medium.push_back(v); medium_degree += degree; break;
      case TaskClass::large: large.push_back(v); large_degree += degree; break;
    }
  }

  std::size_t size() const noexcept { return small.size() + medium.size() + large.size(); }
  bool empty() const noexcept { return size() == 0; }
  std::uint64_t total_degree() const noexcept { return small_degree + medium_degree + large_degree; }

  void clear() {
    small.clear();
    medium.clear();
    large.clear();
    small_degree = medium_degree = large_degree = 0;
  }

  const std::vector<VertexId>& list(TaskClass c) const noexcept {
    return c == TaskClass::small ? small : c == TaskClass::medium ? medium : large;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (auto v : small) fn(v);
    for (auto v : medium) fn(v);
    for (auto v : large) fn(v);
  }

  /// small, medium and large concatenated.
  std::vector<VertexId> flatten() const;

  static ActiveLists from_vertices(std::span<const VertexId> vs, DegreeView degrees, const Separators& seps = {});
};

/// Online filter recording: append v to the worker's bin.
inline ThreadBin::Record online_record(ThreadBin& bin, VertexId v) { return bin.record(v); }

/// Scan flags in worker_count contiguous ranges. Per class the result is
/// sorted and duplicate-free, and independent of worker_count.
ActiveLists ballot_filter(std::span<const std::uint8_t> flags, DegreeView degrees, unsigned worker_count,
                          const Separators& seps = {});

/// Exclusive prefix scan over bin sizes gives each bin's output offset.
/// Throws ContractViolation when a bin overflowed.
ActiveLists concat_bins(std::span<const ThreadBin> bins, DegreeView degrees, const Separators& seps = {});

/// Output offsets of concat_bins: offsets[i] = sum of sizes of bins before i.
std::vector<std::size_t> bin_offsets(std::span<const ThreadBin> bins);

enum class FilterKind : std::uint8_t { online, ballot, batch };

const char* to_string(FilterKind f);

struct JitTraceRow {
  std::uint32_t iteration = 0;
  FilterKind filter = FilterKind::online;
  std::size_t small = 0, medium = 0, large = 0;
  bool overflow = false;
};

class JitController {
 public:
  explicit JitController(std::size_t threshold = kDefaultOverflowThreshold) : threshold_(threshold) {}

  FilterKind mode() const noexcept { return mode_; }
  std::size_t threshold() const noexcept { return threshold_; }
  const std::vector<JitTraceRow>& trace() const noexcept { return trace_; }

  /// Record an iteration's decision. Mode follows the filter used.
  void note(FilterKind filter, const ActiveLists& lists, bool overflow);

 private:
  FilterKind mode_ = FilterKind::online;
  std::size_t threshold_;
  std::vector<JitTraceRow> trace_;
};

/// Choose the filter for the next frontier: ballot iff some bin overflowed,
/// otherwise concatenate the bins.
ActiveLists jit_step(JitController& ctrl, std::span<const ThreadBin> bins, std::span<const std::uint8_t> flags,
                     DegreeView degrees, unsigned worker_count, const Separators& seps = {});

/// "iteration,filter,small,medium,large,overflow" with a header row.
std::string jit_trace_csv(std::span<const JitTraceRow> rows);

}  // namespace accx
