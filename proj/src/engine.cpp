#include <accx/engine.hpp>

namespace accx {

const char* to_string(FilterMode m) {
  switch (m) {
    case FilterMode::jit: return "jit";
    case FilterMode::ballot: return "ballot";
    case FilterMode::batch: return "batch";
  }
  return "?";
}

FilterMode parse_filter_mode(const std::string& s) {
  if (s == "jit") return FilterMode::jit;
  if (s == "ballot") return FilterMode::ballot;
  if (s == "batch") return FilterMode::batch;
  throw InvalidArgument("unknown filter mode '" + s + "' (expected jit, ballot or batch)");
}

Direction parse_direction(const std::string& s) {
  if (s == "push") return Direction::push;
  if (s == "pull") return Direction::pull;
  throw InvalidArgument("unknown direction '" + s + "' (expected push or pull)");
}

void EngineConfig::validate() const {
  if (worker_count < 1) throw InvalidArgument("worker_count must be at least 1");
  if (overflow_threshold < 1) throw InvalidArgument("overflow_threshold must be at least 1");
  if (!(direction_alpha > 0)) throw InvalidArgument("direction_alpha must be positive");
  separators.validate();
}

}  // namespace accx
