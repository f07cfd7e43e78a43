#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace accx {

using VertexId = std::uint32_t;
using EdgeId = std::uint64_t;
using Weight = float;

inline constexpr VertexId kInvalidVertex = std::numeric_limits<VertexId>::max();

enum class Direction : std::uint8_t { push, pull };

inline const char* to_string(Direction d) { return d == Direction::push ? "push" : "pull"; }
/// "push" or "pull"; throws InvalidArgument otherwise.
Direction parse_direction(const std::string& s);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text input that does not follow the edge-list grammar. Carries the 1-based line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what, const std::string& source = {})
      : Error((source.empty() ? "" : source + ":") + "line " + std::to_string(line) + ": " + what),
        line_(line),
        detail_(what) {}
  const std::string& detail() const noexcept { return detail_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
  std::string detail_;
};

/// Binary graph stream is malformed (bad magic, truncation, shape mismatch).
class FormatError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A caller broke a documented precondition of a task-manager operation.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace accx
