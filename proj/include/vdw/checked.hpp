#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vdw {

using u64 = std::uint64_t;

struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

inline u64 checked_mul(u64 a, u64 b) {
  u64 out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError("integer overflow: " + std::to_string(a) + " * " + std::to_string(b));
  }
  return out;
}

inline u64 checked_add(u64 a, u64 b) {
  u64 out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw OverflowError("integer overflow: " + std::to_string(a) + " + " + std::to_string(b));
  }
  return out;
}

// base^exp by repeated multiplication; throws on wraparound.
inline u64 checked_pow(u64 base, unsigned exp) {
  u64 acc = 1;
  for (unsigned i = 0; i < exp; ++i) acc = checked_mul(acc, base);
  return acc;
}

}  // namespace vdw
