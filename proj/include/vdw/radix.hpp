#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vdw/checked.hpp"

namespace vdw::radix {

/// Positional expansion of a positive integer, most-significant digit first.
///
/// Invariants: digits.front() is in [1, base-1], every other digit is in
/// [0, base-1], digits.size() == exponent + 1 and
/// base^exponent <= value < base^(exponent+1).
struct RadixRep {
  u64 value = 0;
  u64 base = 0;
  std::vector<u64> digits;
  unsigned exponent = 0;

  friend bool operator==(const RadixRep&, const RadixRep&) = default;
};

/// Half-open integer interval [low, high).
struct Interval {
  u64 low = 0;
  u64 high = 0;

  bool contains(u64 v) const { return low <= v && v < high; }
  bool empty() const { return low >= high; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// floor(log_base(value)) by integer iteration only.
unsigned floor_log(u64 value, u64 base);

RadixRep to_radix(u64 value, u64 base);

/// Horner evaluation. Rejects out-of-range digits, a leading zero, or a
/// digit count inconsistent with the exponent.
u64 from_radix(const RadixRep& rep);

/// Horner evaluation of a bare digit string (no leading-digit rule), used
/// for the all-(base-1) maximality check.
u64 horner(const std::vector<u64>& digits, u64 base);

/// [base^n, base^(n+1)) with n = floor_log(value, base).
Interval containing_interval(u64 value, u64 base);

/// Intersection of the radix-r and radix-k containing intervals of value.
Interval dual_interval_intersection(u64 value, u64 r, u64 k);

/// log_base(value) rounded half-up to `places` decimals. Exact when the
/// logarithm is rational; otherwise evaluated at ~100 significant digits.
/// Display only: no verdict anywhere depends on this string.
std::string log_display(u64 value, u64 base, unsigned places);

/// Renders "base^exp", the symbolic form used in table cells.
std::string power_string(u64 base, u64 exp);

}  // namespace vdw::radix
