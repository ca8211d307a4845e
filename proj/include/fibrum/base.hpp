#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fibrum {

// Malformed input data (bad Cayley table, bad JSON, schema mismatch).
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation does not hold.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured size bound was exceeded.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A structural fact that the theory guarantees failed to hold.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

inline void require(bool cond, const char* msg) {
  if (!cond) throw PreconditionError(msg);
}

inline void check_internal(bool cond, const char* msg) {
  if (!cond) throw InternalError(msg);
}

}  // namespace fibrum
