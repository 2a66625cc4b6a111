#include "vdw/bounds.hpp"

#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "vdw/radix.hpp"

namespace vdw::bounds {

namespace {

namespace mp = boost::multiprecision;
using u128 = unsigned __int128;

u64 resolve(const Registry& registry, unsigned r, unsigned k, const std::optional<u64>& override_value) {
  if (override_value) {
    if (*override_value < 1) throw std::invalid_argument("W value must be positive");
    return *override_value;
  }
  return registry.require(r, k).value;
}

// r^e as a 128-bit value; only called with r^(e-1) <= u64 max.
u128 wide_pow(u64 r, unsigned e) {
  u128 acc = 1;
  for (unsigned i = 0; i < e; ++i) acc *= r;
  return acc;
}

std::string fixed_from_scaled(const mp::cpp_int& scaled, unsigned places) {
  std::string digits = scaled.str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  if (places == 0) return digits;
  return digits.substr(0, digits.size() - places) + "." + digits.substr(digits.size() - places);
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::vacuous: return "vacuous";
    case Verdict::not_evaluated: return "not-evaluated";
  }
  return "?";
}

TheoremReport check_theorem(const Registry& registry, unsigned r, unsigned k,
                            std::optional<unsigned> k_prime, const TheoremOverrides& overrides) {
  if (r < 2) throw std::invalid_argument("theorem: r must be >= 2");
  if (k < 3) throw std::invalid_argument("theorem: k must be >= 3");
  if (k_prime && *k_prime >= k) {
    throw std::invalid_argument("theorem: k' must be smaller than k (got k'=" + std::to_string(*k_prime) +
                                ", k=" + std::to_string(k) + ")");
  }

  TheoremReport rep;
  rep.r = r;
  rep.k = k;
  rep.k_prime = k_prime;
  rep.w = resolve(registry, r, k, overrides.w);
  rep.n = radix::floor_log(rep.w, r);
  const u64 n1 = u64{rep.n} + 1;
  rep.k_squared = u64{k} * k;

  // [3, sqrt(n+1)) contains an integer iff 3^2 < n+1.
  const bool interval_has_integer = 9 < n1;

  if (k_prime) {
    rep.w_prime = resolve(registry, r, *k_prime, overrides.w_prime);
    rep.condition1 = (rep.w > *rep.w_prime && k > *k_prime) ? Verdict::holds : Verdict::fails;
    const u64 r_pow_n = checked_pow(r, rep.n);  // <= W, cannot overflow
    rep.condition2 = (*rep.w_prime < r_pow_n) ? Verdict::holds : Verdict::fails;
    if (!interval_has_integer) {
      rep.condition3 = Verdict::vacuous;
    } else {
      const u64 kp = *k_prime;
      rep.condition3 = (kp >= 3 && kp * kp < n1) ? Verdict::holds : Verdict::fails;
    }
  } else if (!interval_has_integer) {
    rep.condition3 = Verdict::vacuous;
  }

  rep.k_lower_bound_holds = rep.k_squared >= n1;
  rep.conclusion_holds = u128{rep.w} < wide_pow(r, rep.n + 1) && n1 <= rep.k_squared;

  if (rep.k_lower_bound_holds && !rep.conclusion_holds) {
    throw std::logic_error("theorem: k^2 >= n+1 but the conclusion failed");
  }
  return rep;
}

LogBound verify_log_bound(unsigned r, unsigned k, u64 w, Domain domain) {
  if (r < 2) throw std::invalid_argument("log bound: r must be >= 2");
  const unsigned min_k = domain == Domain::standard ? 3 : 1;
  if (k < min_k) throw std::invalid_argument("log bound: k must be >= " + std::to_string(min_k));
  if (w < 1) throw std::invalid_argument("log bound: W must be >= 1");
  LogBound out;
  out.n_plus_1 = radix::floor_log(w, r) + 1;
  out.k_squared = u64{k} * k;
  out.holds = out.n_plus_1 <= out.k_squared;
  return out;
}

std::string sqrt_display(u64 v, unsigned places) {
  mp::cpp_int scale = mp::pow(mp::cpp_int(10), places);
  mp::cpp_int root = mp::sqrt(mp::cpp_int(v));
  if (root * root == v) return root.str();
  mp::cpp_int scaled = mp::sqrt(mp::cpp_int(v) * scale * scale);  // floor
  return fixed_from_scaled(scaled, places);
}

std::string ln_display(u64 v, unsigned places) {
  if (v < 2) throw std::invalid_argument("ln_display: argument must be >= 2");
  using Float = mp::cpp_bin_float_100;
  Float scaled = mp::log(Float(v)) * Float(mp::pow(mp::cpp_int(10), places));
  return fixed_from_scaled(mp::cpp_int(mp::floor(scaled)), places);
}

std::vector<Table1Row> table1(const Registry& registry, unsigned places) {
  std::vector<Table1Row> rows;
  for (const auto& rec : registry.records()) {
    Table1Row row;
    row.r = rec.r;
    row.k = rec.k;
    row.n = radix::floor_log(rec.value, rec.r);
    row.w = rec.value;
    row.exponent = radix::log_display(rec.value, rec.r, places);
    row.r_pow_n = radix::power_string(rec.r, row.n);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Table2Row> table2(const Registry& registry) {
  std::vector<Table2Row> rows;
  for (const auto& rec : registry.records()) {
    Table2Row row;
    row.r = rec.r;
    row.k = rec.k;
    row.n = radix::floor_log(rec.value, rec.r);
    row.sqrt_n_plus_1 = sqrt_display(row.n + 1);
    row.ln_r = ln_display(rec.r);
    row.ln_k = ln_display(rec.k);
    row.r_pow_n = radix::power_string(rec.r, row.n);
    row.w = rec.value;
    row.r_pow_n_plus_1 = radix::power_string(rec.r, row.n + 1);
    row.r_pow_k_squared = radix::power_string(rec.r, u64{rec.k} * rec.k);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace vdw::bounds
