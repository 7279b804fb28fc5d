#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace creg {

// Building a causal relation whose closure would identify distinct points.
struct CycleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A region-pair operation was given regions that are not spacelike separated.
struct NotSpacelike : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Conditioning on an event of measure zero.
struct ZeroConditioningEvent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A sweep or enumeration request exceeds the configured size caps.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The parts handed to a factorization are not a disjoint cover of the region.
struct PartitionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A full specification failed to factor across a partition of its region.
// Never expected to fire; if it does, the witness must be reported, not
// swallowed.
struct FactorizationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A search exhausted its budget without a hit.
struct NotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Text input (region expression, rational literal, model file) rejected.
struct ParseError : std::runtime_error {
  std::size_t position;  // byte offset into the input, 0-based

  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

}  // namespace creg
