#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wadge {

enum class ErrorKind {
  BoundExceeded,     // ordinal or period outside the configured bound
  ResourceBound,     // enumeration size or search budget exceeded
  InvalidInput,      // malformed or out-of-range argument
  InvalidSequence,   // difference sequence not increasing / not upsets
  HypothesisFailed,  // precondition of a construction violated
  InvalidWitness,    // supplied chain does not witness what it claims
  NotScattered,      // chain has a provably finite interval
  InvalidPattern,    // alternation pattern violates the successor rule
  InvalidChain,      // chain not strictly decreasing
  ShapeMismatch,     // families/maps over incompatible lattices
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wadge
