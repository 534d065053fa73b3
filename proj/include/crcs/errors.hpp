#pragma once

#include <stdexcept>
#include <string>

namespace crcs {

// Malformed input data (edge lists, delta files). Carries the offending line
// number where available.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg) {}
};

// Invalid parameters or mismatched artifacts (window out of range, index
// built over a different network, num_snapshots > |E|, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A structural invariant of a graph operation was violated (duplicate edge,
// self loop, edge not present, weight outside (0,1]).
class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

// Corrupt or incompatible serialized artifacts.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// An update in a delta file is not applicable to the target snapshot.
class DeltaError : public std::runtime_error {
 public:
  explicit DeltaError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace crcs
