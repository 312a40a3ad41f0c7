#pragma once

#include <stdexcept>
#include <string>

namespace tms {

// Malformed instance text (bad token, bad header, ...). line is 1-based.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// Structurally valid input that violates a semantic requirement
// (out-of-range vertex, duplicate pair, nonpositive weight, cross-component
// terminal pair, solver preconditions such as unit weights).
struct InvalidInstance : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A terminal pair spans two components of a graph handed to ensure_connected.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured work cap (DP family size, brute-force vertex count, cover size,
// branching depth) would be exceeded. Deliberate refusal, not a verdict.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal invariant failed (e.g. a reduction's candidate family is not
// core-invariant). Signals an implementation bug, never a property of the input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace tms
