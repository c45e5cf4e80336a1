#pragma once

#include <stdexcept>
#include <string>

namespace fphase {

enum class ErrorKind {
  registry_mismatch,
  ring_mismatch,
  nilpotency,       // exp of an element with nonzero scalar part, etc.
  parity,           // substitution image or parameter component not odd
  singularity,      // singular denominator (e.g. 1 + c1*c2*t^2 = 0)
  capacity,         // generator budget or series cap exceeded
  parse,
  config,
  internal,
};

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace fphase
