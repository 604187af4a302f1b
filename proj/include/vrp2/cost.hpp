#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace vrp2 {

using Cost = std::int64_t;
using Demand = std::int64_t;

// Forbidden arcs and traversals carry this value. Any sum of two values
// <= kInfinity fits in int64, so saturate() after a single add is enough.
inline constexpr Cost kInfinity = std::numeric_limits<Cost>::max() / 4;

// Largest cost accepted from input files.
inline constexpr Cost kMaxFiniteInput = Cost{1} << 50;

constexpr bool is_infinite(Cost c) noexcept { return c >= kInfinity; }

constexpr Cost saturate(Cost c) noexcept { return c >= kInfinity ? kInfinity : c; }

constexpr Cost sat_add(Cost a, Cost b) noexcept { return saturate(a + b); }

template <typename... Rest>
constexpr Cost sat_add(Cost a, Cost b, Rest... rest) noexcept {
  return sat_add(sat_add(a, b), rest...);
}

inline std::string cost_to_string(Cost c) {
  return is_infinite(c) ? std::string("INF") : std::to_string(c);
}

// Error hierarchy. Every failure reported by the library derives from Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sequence does not cover the customers exactly once, or 0 is misplaced.
class StructureError : public Error {
 public:
  using Error::Error;
};

// Instance too large for the exact solver or the oracle.
class SizeError : public Error {
 public:
  using Error::Error;
};

// No assignment of customers to the two vehicles respects capacities and
// fixed items.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class AggregationError : public Error {
 public:
  using Error::Error;
};

class DisassemblyError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace vrp2
