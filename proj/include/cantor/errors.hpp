// errors.hpp -- exception taxonomy shared across the library and the CLI
#pragma once

#include <stdexcept>
#include <string>

namespace cantor {

// Malformed input or violated precondition: bad JSON, invalid word, measure
// parameters out of range, ambient mismatch, ... CLI exit code 2.
class InvalidInput : public std::runtime_error {
 public:
  explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// A search or construction ran out of its configured budget without reaching
// a verdict. CLI exit code 3.
class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Hard cap on explored nodes / materialized values, to keep desk-scale runs
// from wedging. CLI exit code 3.
class ResourceLimit : public std::runtime_error {
 public:
  explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

// An operation's precondition failed with a concrete, re-checkable witness
// (e.g. a homeomorphism builder handed a map that misses a cylinder, or a
// measure pair that a preservation check refutes). CLI exit code 1, like any
// other verified negative outcome. `witness` carries a short machine-readable
// token: typically the offending word.
class WitnessedFailure : public std::runtime_error {
 public:
  WitnessedFailure(const std::string& what, std::string witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

}  // namespace cantor
