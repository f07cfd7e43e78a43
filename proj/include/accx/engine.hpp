#pragma once

// Bulk-synchronous execution of an AccProgram.
//
// Each superstep: compute over the frontier (push along out-edges or pull
// along in-edges), barrier, settle the processed frontier, barrier, then
// one apply per destination by its owning worker. Applies flag vertices
// that stay active and record them into the owner's bin; the JIT step turns
// bins or flags into the next frontier.

#include <accx/acc.hpp>
#include <accx/graph.hpp>
#include <accx/parallel.hpp>
#include <accx/schedule.hpp>
#include <accx/stats.hpp>
#include <accx/task_manager.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace accx {

enum class FilterMode : std::uint8_t {
  jit,     // online bins, ballot on overflow
  ballot,  // always scan flags
  batch,   // baseline: materialize active edges, unbounded bins, push only
};

const char* to_string(FilterMode m);
FilterMode parse_filter_mode(const std::string& s);

struct EngineConfig {
  unsigned worker_count = 1;
  std::size_t overflow_threshold = kDefaultOverflowThreshold;
  Separators separators{};
  double direction_alpha = 20.0;
  bool deterministic = false;
  std::uint32_t max_iterations = 100000;
  FilterMode filter = FilterMode::jit;
  std::optional<Direction> force_direction;
  std::uint64_t batch_budget = 0;  // active-edge entries; 0 means 2 x edge_count

  void validate() const;
};

/// The batch path would need more active-edge entries than its budget.
class BatchMemoryError : public Error {
 public:
  using Error::Error;
};

template <class Value>
struct RunResult {
  std::vector<Value> metadata;
  RunStats stats;
  std::vector<JitTraceRow> jit_trace;
};

/// Work counters of one superstep.
struct SuperstepRecord {
  std::uint64_t edges_examined = 0;
  std::uint64_t updated = 0;
  std::uint64_t flagged = 0;
  double delta_l1 = 0.0;
  std::uint64_t buffer_entries = 0;
  std::uint64_t active_edge_buffer = 0;
};

template <AccProgram S>
class Engine {
 public:
  using Value = typename S::Value;
  using Update = typename S::Update;

  Engine(const CsrGraph& g, S spec, EngineConfig cfg = {})
      : g_(g), spec_(std::move(spec)), cfg_(cfg), combine_(spec_.combiner()) {
    cfg_.validate();
    setup();
    meta_.resize(g_.vertex_count());
    parallel_for_workers(W(), [&](unsigned w) {
      for (auto v = owners_begin(w); v < owners_end(w); ++v)
        meta_[v] = spec_.init(static_cast<VertexId>(v), g_);
    });
  }

  Engine(const CsrGraph& g, S spec, EngineConfig cfg, std::vector<Value> metadata)
      : g_(g), spec_(std::move(spec)), cfg_(cfg), combine_(spec_.combiner()), meta_(std::move(metadata)) {
    cfg_.validate();
    if (meta_.size() != g_.vertex_count()) throw InvalidArgument("metadata size does not match vertex count");
    setup();
  }

  const std::vector<Value>& metadata() const noexcept { return meta_; }
  std::vector<Value>& mutable_metadata() noexcept { return meta_; }
  std::span<const std::uint8_t> flags() const noexcept { return flags_; }
  std::span<const ThreadBin> bins() const noexcept { return bins_; }
  const JitController& jit() const noexcept { return jit_; }
  const EngineConfig& config() const noexcept { return cfg_; }

  /// Scan the activity predicate over all vertices and build the first frontier.
  ActiveLists initial_frontier() {
    reset_bins();
    parallel_for_workers(W(), [&](unsigned w) {
      for (auto v = owners_begin(w); v < owners_end(w); ++v)
        if (spec_.active(static_cast<VertexId>(v), meta_[v])) {
          flags_[v] = 1;
          if (cfg_.filter != FilterMode::ballot) bins_[w].record(static_cast<VertexId>(v));
        }
    });
    return build_next();
  }

  /// Push superstep. all_active applies every vertex (identity if untouched).
  SuperstepRecord superstep_push(const ActiveLists& frontier, bool all_active = false) {
    SuperstepRecord rec;
    reset_bins();
    const auto assign = schedule_tasks(frontier, g_.out_offsets(), W(), cfg_.separators);
    const auto& nbr = g_.out_neighbor_array();
    const auto& wts = g_.out_weight_array();
    parallel_for_workers(W(), [&](unsigned w) {
      auto& tally = tallies_[w];
      tally = {};
      for (auto& box : outbox_[w]) box.clear();
      for (const auto& t : assign.per_worker[w]) {
        const Value& mv = meta_[t.vertex];
        for (auto i = t.begin; i < t.end; ++i) {
          const VertexId u = nbr[i];
          const Update upd = spec_.compute(mv, wts[i], meta_[u]);
          ++tally.examined;
          if (combine_.equal(upd, combine_.identity())) continue;
          outbox_[w][owners_.owner(u)].push_back({u, i, upd});
        }
      }
    });
    settle_frontier(frontier, all_active);
    fold_and_apply(all_active);
    for (unsigned w = 0; w < W(); ++w)
      for (const auto& box : outbox_[w]) rec.buffer_entries += box.size();
    return finish(rec);
  }

  /// Pull superstep: each owner gathers over its destinations' in-edges.
  /// Sources are the frontier unless all_active.
  SuperstepRecord superstep_pull(const ActiveLists& frontier, bool all_active = false) {
    if (!g_.has_in_edges()) throw InvalidArgument("pull requested without reverse structure");
    SuperstepRecord rec;
    reset_bins();
    if (!all_active) frontier.for_each([&](VertexId v) { in_frontier_[v] = 1; });
    const auto& in_off = g_.directed() ? g_.in_offsets() : g_.out_offsets();
    const auto& in_nbr = g_.directed() ? g_.in_neighbor_array() : g_.out_neighbor_array();
    const auto& in_wts = g_.directed() ? g_.in_weight_array() : g_.out_weight_array();
    parallel_for_workers(W(), [&](unsigned w) {
      auto& tally = tallies_[w];
      tally = {};
      auto& touched = touched_[w];
      touched.clear();
      for (auto u = pull_owners_.begin(w); u < pull_owners_.end(w); ++u) {
        if constexpr (HasPullTarget<S>)
          if (!spec_.pull_target(meta_[u])) continue;
        Update acc = combine_.identity();
        bool any = false;
        for (auto j = in_off[u]; j < in_off[u + 1]; ++j) {
          const VertexId v = in_nbr[j];
          ++tally.examined;
          if (!all_active && !in_frontier_[v]) continue;
          const Update upd = spec_.compute(meta_[v], in_wts[j], meta_[u]);
          if (combine_.equal(upd, combine_.identity())) continue;
          acc = combine_(acc, upd);
          any = true;
          if (spec_.combine_class() == CombineClass::voting) break;
        }
        if (any) {
          pending_[u] = acc;
          touched.push_back(static_cast<VertexId>(u));
        }
      }
    });
    settle_frontier(frontier, all_active);
    parallel_for_workers(W(), [&](unsigned w) {
      if (all_active) {
        for (auto u = pull_owners_.begin(w); u < pull_owners_.end(w); ++u) apply_vertex(w, static_cast<VertexId>(u));
      } else {
        for (auto u : touched_[w]) apply_vertex(w, u);
      }
    });
    if (!all_active) frontier.for_each([&](VertexId v) { in_frontier_[v] = 0; });
    for (const auto& t : touched_) rec.buffer_entries += t.size();
    return finish(rec);
  }

  /// Baseline step: materialize every active edge, compute and apply as in
  /// push, then append each flagged destination of a contributing edge to
  /// unbounded per-worker bins. The returned list may hold duplicates.
  ActiveLists batch_step(const ActiveLists& frontier, SuperstepRecord* out = nullptr, bool all_active = false) {
    SuperstepRecord rec;
    const std::uint64_t budget = cfg_.batch_budget ? cfg_.batch_budget : 2 * g_.edge_count();
    // the redundant list is gathered per distinct vertex
    const auto sources = unique_frontier(frontier);
    std::uint64_t m = 0;
    for (auto v : sources) m += g_.out_degree(v);
    if (m > budget)
      throw BatchMemoryError("batch filter needs " + std::to_string(m) + " active-edge entries, budget " +
                             std::to_string(budget));
    reset_bins();
    std::vector<BatchBin> batch_bins(W());
    std::vector<ActiveEdge> edges;
    edges.reserve(m);
    for (auto v : sources)
      for (auto i = g_.out_offsets()[v]; i < g_.out_offsets()[v + 1]; ++i)
        edges.push_back({v, g_.out_neighbor_array()[i], i});
    std::vector<std::uint8_t> contributes(edges.size(), 0);
    const auto& wts = g_.out_weight_array();
    auto chunk = [&](unsigned w) {
      return std::pair<std::size_t, std::size_t>{edges.size() * w / W(), edges.size() * (w + 1) / W()};
    };
    parallel_for_workers(W(), [&](unsigned w) {
      auto& tally = tallies_[w];
      tally = {};
      for (auto& box : outbox_[w]) box.clear();
      const auto [b, e] = chunk(w);
      for (auto k = b; k < e; ++k) {
        const auto& ae = edges[k];
        const Update upd = spec_.compute(meta_[ae.src], wts[ae.eidx], meta_[ae.dst]);
        ++tally.examined;
        if (combine_.equal(upd, combine_.identity())) continue;
        contributes[k] = 1;
        outbox_[w][owners_.owner(ae.dst)].push_back({ae.dst, ae.eidx, upd});
      }
    });
    for (auto v : sources) settle_one(v);
    fold_and_apply(all_active);
    parallel_for_workers(W(), [&](unsigned w) {
      const auto [b, e] = chunk(w);
      for (auto k = b; k < e; ++k)
        if (contributes[k] && flags_[edges[k].dst]) batch_bins[w].push_back(edges[k].dst);
    });
    std::vector<VertexId> flat;
    for (const auto& bin : batch_bins) flat.insert(flat.end(), bin.begin(), bin.end());
    rec.active_edge_buffer = edges.size();
    rec.buffer_entries = edges.size() + flat.size();
    for (unsigned w = 0; w < W(); ++w)
      for (const auto& box : outbox_[w]) rec.buffer_entries += box.size();
    rec = finish(rec);
    if (out) *out = rec;
    clear_flags(false);
    return ActiveLists::from_vertices(flat, g_.out_degrees(), cfg_.separators);
  }

  RunResult<Value> run() {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    RunStats stats;
    dense_ = density() != Density::sparse;
    bool pulled_phase_over = false;
    ActiveLists frontier = initial_frontier();
    FilterKind filter = jit_.trace().back().filter;
    bool overflow = jit_.trace().back().overflow;
    if (dense_) frontier = all_vertices();
    bool converged = false;
    for (std::uint32_t it = 1;; ++it) {
      if (frontier.empty() || frontier.total_degree() == 0) {
        converged = true;
        break;
      }
      if (it > cfg_.max_iterations) break;
      const auto ti = clock::now();
      IterationStats row;
      row.iteration = it;
      row.filter = filter;
      row.overflow = overflow;
      row.all_active = dense_;
      row.small = frontier.small.size();
      row.medium = frontier.medium.size();
      row.large = frontier.large.size();
      row.active_vertices = frontier.size();
      row.active_edges = frontier.total_degree();
      row.direction = choose_direction(frontier, it, pulled_phase_over);

      SuperstepRecord rec;
      ActiveLists next;
      bool batch_next = false;
      if (cfg_.filter == FilterMode::batch) {
        next = batch_step(frontier, &rec, dense_);
        batch_next = true;
      } else if (row.direction == Direction::push) {
        rec = superstep_push(frontier, dense_);
      } else {
        rec = superstep_pull(frontier, dense_);
      }
      row.edges_examined = rec.edges_examined;
      row.updated = rec.updated;
      row.flagged = rec.flagged;
      row.delta_l1 = rec.delta_l1;

      bool next_dense = dense_;
      if (dense_ && density() == Density::dense_then_sparse && !keep_dense(row) &&
          rec.flagged <= cfg_.overflow_threshold)
        next_dense = false;
      bool stop = false;
      if constexpr (HasConverged<S>) stop = spec_.converged(row);

      if (next_dense) {
        if (!batch_next) clear_flags(any_overflow());
        next = all_vertices();
        filter = FilterKind::online;
        overflow = false;
        jit_.note(filter, next, false);
      } else if (batch_next) {
        split_deferred(next);
        filter = FilterKind::batch;
        overflow = false;
        jit_.note(filter, next, false);
      } else {
        next = build_next();
        filter = jit_.trace().back().filter;
        overflow = jit_.trace().back().overflow;
      }
      row.buffer_entries = rec.buffer_entries + frontier.size() + next.size() + deferred_.size();
      row.seconds = std::chrono::duration<double>(clock::now() - ti).count();
      stats.peak_buffer_entries = std::max(stats.peak_buffer_entries, row.buffer_entries);
      stats.peak_active_edge_buffer = std::max(stats.peak_active_edge_buffer, rec.active_edge_buffer);
      stats.iterations.push_back(row);
      if (stop) {
        converged = true;
        break;
      }
      dense_ = next_dense;
      frontier = std::move(next);
    }
    stats.converged = converged;
    stats.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    return {meta_, std::move(stats), jit_.trace()};
  }

 private:
  struct Staged {
    VertexId dst;
    EdgeId eidx;
    Update upd;
  };
  struct ActiveEdge {
    VertexId src, dst;
    EdgeId eidx;
  };
  using BatchBin = std::vector<VertexId>;
  struct Tally {
    std::uint64_t examined = 0, updated = 0, flagged = 0;
    double l1 = 0.0;
  };

  unsigned W() const noexcept { return cfg_.worker_count; }
  std::uint64_t owners_begin(unsigned w) const noexcept { return owners_.begin(w); }
  std::uint64_t owners_end(unsigned w) const noexcept { return owners_.end(w); }

  Density density() const {
    if constexpr (HasDensity<S>) return spec_.density();
    else return Density::sparse;
  }

  bool keep_dense(const IterationStats& row) const {
    if constexpr (HasKeepDense<S>) return spec_.keep_dense(row, g_.vertex_count());
    else return true;
  }

  void setup() {
    const auto n = g_.vertex_count();
    owners_ = VertexPartition::equal(n, W());
    const auto& in_off = g_.directed() && g_.has_reverse() ? g_.in_offsets() : g_.out_offsets();
    pull_owners_ = VertexPartition::balanced(in_off, W());
    pending_.assign(n, combine_.identity());
    touched_mark_.assign(n, 0);
    flags_.assign(n, 0);
    in_frontier_.assign(n, 0);
    mark_.assign(n, 0);
    if (cfg_.deterministic) change_.assign(n, 0.0);
    outbox_.assign(W(), std::vector<std::vector<Staged>>(W()));
    touched_.assign(W(), {});
    tallies_.assign(W(), {});
    bins_.clear();
    const auto cap = cfg_.filter == FilterMode::batch ? ThreadBin::kUnbounded : cfg_.overflow_threshold;
    for (unsigned w = 0; w < W(); ++w) bins_.emplace_back(w, cap);
    jit_ = JitController(cfg_.overflow_threshold);
    if constexpr (HasPriority<S>) {
      const double width = spec_.bucket_width();
      if (!(width > 0)) throw InvalidArgument("bucket width must be positive");
      limit_ = width;
    }
  }

  void reset_bins() {
    for (auto& b : bins_) b.clear();
  }

  bool any_overflow() const {
    return std::any_of(bins_.begin(), bins_.end(), [](const ThreadBin& b) { return b.overflowed(); });
  }

  void clear_flags(bool full) {
    if (full) {
      parallel_for_workers(W(), [&](unsigned w) {
        std::fill(flags_.begin() + owners_begin(w), flags_.begin() + owners_end(w), std::uint8_t{0});
      });
    } else {
      for (const auto& b : bins_)
        for (auto v : b.entries()) flags_[v] = 0;
    }
  }

  ActiveLists all_vertices() {
    if (all_.size() != g_.vertex_count()) {
      std::vector<VertexId> vs(g_.vertex_count());
      std::iota(vs.begin(), vs.end(), VertexId{0});
      all_ = ActiveLists::from_vertices(vs, g_.out_degrees(), cfg_.separators);
    }
    return all_;
  }

  /// Frontier from bins or flags, then flags cleared and deferral applied.
  ActiveLists build_next() {
    ActiveLists next;
    if (cfg_.filter == FilterMode::batch) {
      next = concat_bins(bins_, g_.out_degrees(), cfg_.separators);
      jit_.note(FilterKind::batch, next, false);
      clear_flags(false);
    } else if (cfg_.filter == FilterMode::ballot) {
      next = ballot_filter(flags_, g_.out_degrees(), W(), cfg_.separators);
      jit_.note(FilterKind::ballot, next, any_overflow());
      clear_flags(true);
    } else {
      const bool full = any_overflow();
      next = jit_step(jit_, bins_, flags_, g_.out_degrees(), W(), cfg_.separators);
      clear_flags(full);
    }
    split_deferred(next);
    return next;
  }

  /// Bucketed activation: keep vertices below the bucket limit, defer the
  /// rest; advance the bucket when nothing is left.
  void split_deferred(ActiveLists& lists) {
    if constexpr (HasPriority<S>) {
      const double width = spec_.bucket_width();
      ActiveLists now;
      auto route = [&](VertexId v) {
        // a vertex without out-edges produces nothing; settle it so an empty
        // bucket advances instead of ending the run
        if (g_.out_degree(v) == 0) settle_one(v);
        else if (spec_.priority(meta_[v]) < limit_) now.add(v, g_.out_degree(v), cfg_.separators);
        else deferred_.push_back(v);
      };
      lists.for_each(route);
      while (now.empty() && !deferred_.empty()) {
        std::vector<VertexId> kept;
        double lowest = std::numeric_limits<double>::infinity();
        for (auto v : deferred_)
          if (!mark_[v] && spec_.active(v, meta_[v])) {
            mark_[v] = 1;
            kept.push_back(v);
            lowest = std::min(lowest, static_cast<double>(spec_.priority(meta_[v])));
          }
        for (auto v : kept) mark_[v] = 0;
        deferred_.clear();
        if (kept.empty()) break;
        limit_ = (std::floor(lowest / width) + 1.0) * width;
        for (auto v : kept) route(v);
      }
      lists = std::move(now);
    }
  }

  std::vector<VertexId> unique_frontier(const ActiveLists& frontier) {
    std::vector<VertexId> out;
    out.reserve(frontier.size());
    frontier.for_each([&](VertexId v) {
      if (!mark_[v]) {
        mark_[v] = 1;
        out.push_back(v);
      }
    });
    for (auto v : out) mark_[v] = 0;
    return out;
  }

  void settle_one(VertexId v) {
    if constexpr (HasSettle<S>) spec_.settle(meta_[v]);
    else (void)v;
  }

  void settle_frontier(const ActiveLists& frontier, bool all_active) {
    if constexpr (HasSettle<S>) {
      if (all_active) {
        parallel_for_workers(W(), [&](unsigned w) {
          for (auto v = owners_begin(w); v < owners_end(w); ++v) spec_.settle(meta_[v]);
        });
        return;
      }
      // settle is idempotent per superstep, so duplicates in the frontier are harmless here
      const auto vs = frontier.flatten();
      parallel_for_workers(W(), [&](unsigned w) {
        const auto b = vs.size() * w / W(), e = vs.size() * (w + 1) / W();
        for (auto k = b; k < e; ++k) spec_.settle(meta_[vs[k]]);
      });
    } else {
      (void)frontier;
      (void)all_active;
    }
  }

  /// Owner o folds everything addressed to it, then applies each touched
  /// destination once (every owned vertex when all_active).
  void fold_and_apply(bool all_active) {
    parallel_for_workers(W(), [&](unsigned o) {
      auto& touched = touched_[o];
      touched.clear();
      if (cfg_.deterministic) {
        std::vector<Staged> all;
        for (unsigned w = 0; w < W(); ++w) all.insert(all.end(), outbox_[w][o].begin(), outbox_[w][o].end());
        std::sort(all.begin(), all.end(), [](const Staged& a, const Staged& b) {
          return a.dst != b.dst ? a.dst < b.dst : a.eidx < b.eidx;
        });
        for (const auto& s : all) fold_into(touched, s);
      } else {
        for (unsigned w = 0; w < W(); ++w)
          for (const auto& s : outbox_[w][o]) fold_into(touched, s);
      }
      if (all_active) {
        for (auto u = owners_begin(o); u < owners_end(o); ++u) apply_vertex(o, static_cast<VertexId>(u));
      } else {
        for (auto u : touched) apply_vertex(o, u);
      }
    });
  }

  void fold_into(std::vector<VertexId>& touched, const Staged& s) {
    if (!touched_mark_[s.dst]) {
      touched_mark_[s.dst] = 1;
      touched.push_back(s.dst);
      pending_[s.dst] = s.upd;
    } else {
      pending_[s.dst] = combine_(pending_[s.dst], s.upd);
    }
  }

  void apply_vertex(unsigned w, VertexId u) {
    auto& tally = tallies_[w];
    const Update upd = pending_[u];
    pending_[u] = combine_.identity();
    touched_mark_[u] = 0;
    [[maybe_unused]] Value before{};
    if constexpr (HasChange<S>) before = meta_[u];
    if (!spec_.apply(meta_[u], upd)) {
      if (cfg_.deterministic) change_[u] = 0.0;
      return;
    }
    ++tally.updated;
    double c = 1.0;
    if constexpr (HasChange<S>) c = spec_.change(before, meta_[u]);
    if (cfg_.deterministic) change_[u] = c;
    else tally.l1 += c;
    if (spec_.active(u, meta_[u])) {
      flags_[u] = 1;
      ++tally.flagged;
      if (cfg_.filter != FilterMode::ballot) bins_[w].record(u);
    }
  }

  SuperstepRecord finish(SuperstepRecord rec) {
    for (const auto& t : tallies_) {
      rec.edges_examined += t.examined;
      rec.updated += t.updated;
      rec.flagged += t.flagged;
      rec.delta_l1 += t.l1;
    }
    if (cfg_.deterministic) {
      double l1 = 0.0;
      for (auto& c : change_) {
        l1 += c;
        c = 0.0;
      }
      rec.delta_l1 = l1;
    }
    for (const auto& b : bins_) rec.buffer_entries += b.size();
    return rec;
  }

  Direction choose_direction(const ActiveLists& frontier, std::uint32_t it, bool& pulled_phase_over) const {
    auto checked = [&](Direction d) {
      if (d == Direction::pull && !g_.has_in_edges()) throw InvalidArgument("pull requested without reverse structure");
      return d;
    };
    if (cfg_.force_direction) return checked(*cfg_.force_direction);
    if (cfg_.filter == FilterMode::batch) return Direction::push;
    DirectionPolicy policy = DirectionPolicy::adaptive;
    if constexpr (HasDirectionPolicy<S>) policy = spec_.direction_policy();
    const auto heuristic = [&] {
      return direction_select(frontier.total_degree(), g_.edge_count(), cfg_.direction_alpha);
    };
    switch (policy) {
      case DirectionPolicy::adaptive:
        return g_.has_in_edges() ? heuristic() : Direction::push;
      case DirectionPolicy::pull_then_push:
        if (pulled_phase_over || !g_.has_in_edges()) return Direction::push;
        if (it == 1 || heuristic() == Direction::pull) return Direction::pull;
        pulled_phase_over = true;
        return Direction::push;
      case DirectionPolicy::follow_density:
        return dense_ ? checked(Direction::pull) : Direction::push;
    }
    return Direction::push;
  }

  const CsrGraph& g_;
  S spec_;
  EngineConfig cfg_;
  typename S::Combine combine_;
  std::vector<Value> meta_;
  VertexPartition owners_, pull_owners_;
  std::vector<Update> pending_;
  std::vector<std::uint8_t> touched_mark_, flags_, in_frontier_, mark_;
  std::vector<double> change_;
  std::vector<std::vector<std::vector<Staged>>> outbox_;  // [worker][owner]
  std::vector<std::vector<VertexId>> touched_;
  std::vector<Tally> tallies_;
  std::vector<ThreadBin> bins_;
  JitController jit_;
  std::vector<VertexId> deferred_;
  double limit_ = std::numeric_limits<double>::infinity();
  ActiveLists all_;
  bool dense_ = false;
};

template <AccProgram S>
RunResult<typename S::Value> run(const CsrGraph& g, S spec, const EngineConfig& cfg = {}) {
  Engine<S> engine(g, std::move(spec), cfg);
  return engine.run();
}

/// One baseline step from `current` over the given metadata, which is
/// updated in place. Returns the next frontier, possibly with duplicates.
template <AccProgram S>
ActiveLists batch_filter(const ActiveLists& current, const CsrGraph& g, const S& spec,
                         std::vector<typename S::Value>& metadata, EngineConfig cfg = {}) {
  cfg.filter = FilterMode::batch;
  Engine<S> engine(g, spec, cfg, std::move(metadata));
  auto next = engine.batch_step(current);
  metadata = engine.metadata();
  return next;
}

}  // namespace accx
