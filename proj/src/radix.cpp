#include "vdw/radix.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace vdw::radix {

namespace {

namespace mp = boost::multiprecision;

void require_valid(u64 value, u64 base) {
  if (base < 2) throw std::invalid_argument("radix: base must be >= 2, got " + std::to_string(base));
  if (value < 1) throw std::invalid_argument("radix: value must be >= 1");
}

// g^e, saturating at UINT64_MAX.
u64 saturating_pow(u64 g, unsigned e) {
  u64 acc = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(acc, g, &acc)) return UINT64_MAX;
  }
  return acc;
}

// Largest g with g^e <= n.
u64 integer_root(u64 n, unsigned e) {
  u64 lo = 1;
  u64 hi = (e >= 64) ? 2 : (u64{1} << (64 / e + 1));
  while (lo < hi) {
    u64 mid = lo + (hi - lo + 1) / 2;
    if (saturating_pow(mid, e) <= n) lo = mid; else hi = mid - 1;
  }
  return lo;
}

// n = g^e with g not itself a perfect power.
std::pair<u64, unsigned> primitive_power(u64 n) {
  for (unsigned e = 63; e >= 2; --e) {
    u64 g = integer_root(n, e);
    if (g >= 2 && saturating_pow(g, e) == n) return {g, e};
  }
  return {n, 1};
}

// Exponent e_v with value = g^e_v, if any.
std::optional<unsigned> exact_power_of(u64 value, u64 g) {
  unsigned e = 0;
  while (value % g == 0) {
    value /= g;
    ++e;
  }
  if (value != 1) return std::nullopt;
  return e;
}

std::string format_fixed(const mp::cpp_int& scaled, unsigned places) {
  std::string digits = scaled.str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  if (places == 0) return digits;
  return digits.substr(0, digits.size() - places) + "." + digits.substr(digits.size() - places);
}

}  // namespace

unsigned floor_log(u64 value, u64 base) {
  require_valid(value, base);
  unsigned n = 0;
  u64 p = 1;
  while (p <= value / base) {
    p *= base;
    ++n;
  }
  return n;
}

RadixRep to_radix(u64 value, u64 base) {
  require_valid(value, base);
  RadixRep rep{value, base, {}, 0};
  for (u64 v = value; v > 0; v /= base) rep.digits.push_back(v % base);
  std::reverse(rep.digits.begin(), rep.digits.end());
  rep.exponent = static_cast<unsigned>(rep.digits.size() - 1);
  return rep;
}

u64 horner(const std::vector<u64>& digits, u64 base) {
  if (base < 2) throw std::invalid_argument("radix: base must be >= 2");
  u64 acc = 0;
  for (u64 d : digits) {
    if (d >= base) throw std::invalid_argument("radix: digit " + std::to_string(d) + " out of range for base " + std::to_string(base));
    acc = checked_add(checked_mul(acc, base), d);
  }
  return acc;
}

u64 from_radix(const RadixRep& rep) {
  if (rep.digits.empty()) throw std::invalid_argument("radix: empty digit sequence");
  if (rep.digits.front() == 0) throw std::invalid_argument("radix: leading zero digit");
  if (rep.digits.size() != rep.exponent + std::size_t{1}) {
    throw std::invalid_argument("radix: digit count does not match exponent");
  }
  return horner(rep.digits, rep.base);
}

Interval containing_interval(u64 value, u64 base) {
  unsigned n = floor_log(value, base);
  u64 low = checked_pow(base, n);
  return {low, checked_mul(low, base)};
}

Interval dual_interval_intersection(u64 value, u64 r, u64 k) {
  Interval a = containing_interval(value, r);
  Interval b = containing_interval(value, k);
  Interval out{std::max(a.low, b.low), std::min(a.high, b.high)};
  if (out.empty() || !out.contains(value)) {
    throw std::logic_error("radix: containing intervals fail to intersect at their common value");
  }
  return out;
}

std::string log_display(u64 value, u64 base, unsigned places) {
  require_valid(value, base);
  if (places > 80) throw std::invalid_argument("radix: at most 80 decimal places supported");

  mp::cpp_int ten_p = mp::pow(mp::cpp_int(10), places);

  auto [g, e_base] = primitive_power(base);
  if (auto e_value = exact_power_of(value, g)) {
    // log_base(value) = e_value / e_base exactly; round half up.
    mp::cpp_int num = mp::cpp_int(*e_value) * ten_p * 2 + e_base;
    mp::cpp_int scaled = num / (2 * mp::cpp_int(e_base));
    return format_fixed(scaled, places);
  }

  using Float = mp::cpp_bin_float_100;
  Float ratio = mp::log(Float(value)) / mp::log(Float(base));
  Float shifted = ratio * Float(ten_p) + Float(0.5);
  mp::cpp_int scaled = mp::cpp_int(mp::floor(shifted));
  return format_fixed(scaled, places);
}

std::string power_string(u64 base, u64 exp) {
  return std::to_string(base) + "^" + std::to_string(exp);
}

}  // namespace vdw::radix
