#pragma once

// Active-Compute-Combine programming model.
//
// An algorithm supplies per-vertex metadata, an activity predicate, an edge
// computation producing an update, a commutative/associative combine with an
// identity, and an apply step that merges the combined update into the
// destination and reports whether it changed. Everything else (frontiers,
// scheduling, push/pull) belongs to the engine.

#include <accx/graph.hpp>
#include <accx/types.hpp>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace accx {

enum class CombineClass : std::uint8_t {
  aggregation,  // every update matters (sum, min over distances)
  voting,       // any single update is enough; enables early exit in pull
};

template <class C>
concept Combiner = requires(const C& c, typename C::value_type a, typename C::value_type b) {
  typename C::value_type;
  { c.identity() } -> std::convertible_to<typename C::value_type>;
  { c(a, b) } -> std::convertible_to<typename C::value_type>;
  { c.equal(a, b) } -> std::convertible_to<bool>;
};

template <class T>
struct MinCombine {
  using value_type = T;
  constexpr T identity() const noexcept {
    if constexpr (std::numeric_limits<T>::has_infinity) return std::numeric_limits<T>::infinity();
    else return std::numeric_limits<T>::max();
  }
  constexpr T operator()(T a, T b) const noexcept { return b < a ? b : a; }
  constexpr bool equal(T a, T b) const noexcept { return a == b; }
};

template <class T>
struct MaxCombine {
  using value_type = T;
  constexpr T identity() const noexcept {
    if constexpr (std::numeric_limits<T>::has_infinity) return -std::numeric_limits<T>::infinity();
    else return std::numeric_limits<T>::lowest();
  }
  constexpr T operator()(T a, T b) const noexcept { return a < b ? b : a; }
  constexpr bool equal(T a, T b) const noexcept { return a == b; }
};

/// Sum with an absolute equality tolerance (0 means exact comparison).
template <class T>
struct SumCombine {
  using value_type = T;
  T tolerance{};
  constexpr T identity() const noexcept { return T{}; }
  constexpr T operator()(T a, T b) const noexcept { return a + b; }
  constexpr bool equal(T a, T b) const noexcept {
    if constexpr (std::is_floating_point_v<T>) return std::abs(a - b) <= tolerance;
    else return a == b;
  }
};

/// Left fold from the identity; empty input yields the identity.
template <Combiner C>
typename C::value_type fold_updates(const C& combine, std::span<const typename C::value_type> updates) {
  auto acc = combine.identity();
  for (const auto& u : updates) acc = combine(acc, u);
  return acc;
}

enum class CombineProperty : std::uint8_t { commutativity, associativity, identity };

inline const char* to_string(CombineProperty p) {
  switch (p) {
    case CombineProperty::commutativity: return "commutativity";
    case CombineProperty::associativity: return "associativity";
    case CombineProperty::identity: return "identity";
  }
  return "?";
}

template <class T>
struct CombineViolation {
  CombineProperty property;
  T a{}, b{}, c{};
};

template <class T>
struct CombineReport {
  std::size_t samples = 0;
  std::vector<CombineViolation<T>> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::size_t count(CombineProperty p) const noexcept {
    std::size_t n = 0;
    for (const auto& v : violations) n += v.property == p;
    return n;
  }
};

/// Randomized law check for a combine operator. The sampler draws values
/// from the update domain; equality uses the combiner's declared tolerance.
template <Combiner C, class Sampler>
  requires std::invocable<Sampler&, std::mt19937_64&>
CombineReport<typename C::value_type> validate_combine(const C& combine, Sampler sampler,
                                                       std::size_t sample_count, std::uint64_t seed) {
  using T = typename C::value_type;
  CombineReport<T> report;
  report.samples = sample_count;
  std::mt19937_64 rng(seed);
  const T id = combine.identity();
  for (std::size_t i = 0; i < sample_count; ++i) {
    const T a = sampler(rng), b = sampler(rng), c = sampler(rng);
    if (!combine.equal(combine(a, b), combine(b, a)))
      report.violations.push_back({CombineProperty::commutativity, a, b, T{}});
    if (!combine.equal(combine(combine(a, b), c), combine(a, combine(b, c))))
      report.violations.push_back({CombineProperty::associativity, a, b, c});
    if (!combine.equal(combine(a, id), a) || !combine.equal(combine(id, a), a))
      report.violations.push_back({CombineProperty::identity, a, T{}, T{}});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Algorithm contract consumed by the engine.

/// How a program's active set evolves.
enum class Density : std::uint8_t {
  sparse,             // frontier = vertices whose apply reported a change and which are active
  dense,              // every vertex is active in every iteration
  dense_then_sparse,  // dense until keep_dense() says otherwise, sparse afterwards
};

enum class DirectionPolicy : std::uint8_t {
  adaptive,         // edge-ratio heuristic each iteration
  pull_then_push,   // start pulling, switch to push once the heuristic says so, never return
  follow_density,   // pull while dense, push while sparse
};

struct IterationStats;

template <class S>
concept AccProgram = requires(const S& s, VertexId v, const CsrGraph& g, const typename S::Value& m,
                              typename S::Value& mut, const typename S::Update& u, Weight w) {
  typename S::Value;
  typename S::Update;
  requires Combiner<typename S::Combine>;
  requires std::same_as<typename S::Combine::value_type, typename S::Update>;
  { s.combiner() } -> std::convertible_to<typename S::Combine>;
  { s.combine_class() } -> std::convertible_to<CombineClass>;
  { s.init(v, g) } -> std::convertible_to<typename S::Value>;
  { s.active(v, m) } -> std::convertible_to<bool>;
  { s.compute(m, w, m) } -> std::convertible_to<typename S::Update>;
  { s.apply(mut, u) } -> std::convertible_to<bool>;
};

// Optional hooks, detected at compile time.

/// Called on every processed frontier vertex before the iteration's applies.
template <class S>
concept HasSettle = requires(const S& s, typename S::Value& m) { s.settle(m); };

/// Pull only visits destinations for which this holds.
template <class S>
concept HasPullTarget = requires(const S& s, const typename S::Value& m) {
  { s.pull_target(m) } -> std::convertible_to<bool>;
};

/// Magnitude of a change, summed into the per-iteration L1 delta.
template <class S>
concept HasChange = requires(const S& s, const typename S::Value& a) {
  { s.change(a, a) } -> std::convertible_to<double>;
};

/// Bucketed activation: a vertex joins the frontier only once its priority
/// falls below the current bucket limit (delta-stepping).
template <class S>
concept HasPriority = requires(const S& s, const typename S::Value& m) {
  { s.priority(m) } -> std::convertible_to<double>;
  { s.bucket_width() } -> std::convertible_to<double>;
};

template <class S>
concept HasDensity = requires(const S& s) {
  { s.density() } -> std::convertible_to<Density>;
};

template <class S>
concept HasKeepDense = requires(const S& s, const IterationStats& st, std::uint64_t n) {
  { s.keep_dense(st, n) } -> std::convertible_to<bool>;
};

template <class S>
concept HasDirectionPolicy = requires(const S& s) {
  { s.direction_policy() } -> std::convertible_to<DirectionPolicy>;
};

template <class S>
concept HasConverged = requires(const S& s, const IterationStats& st) {
  { s.converged(st) } -> std::convertible_to<bool>;
};

}  // namespace accx
