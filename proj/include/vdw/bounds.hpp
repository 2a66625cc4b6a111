#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vdw/checked.hpp"
#include "vdw/registry.hpp"

namespace vdw::bounds {

/// Outcome of one hypothesis. `vacuous` means the condition's range for
/// k' holds no integer; `not_evaluated` means k' was not supplied.
enum class Verdict { holds, fails, vacuous, not_evaluated };

std::string_view to_string(Verdict v);

/// Instance check of the interval bound W(r,k) < r^(n+1) <= r^(k^2).
///
/// Every boolean here comes from integer comparisons: square roots are
/// compared squared, logarithms through powers.
struct TheoremReport {
  unsigned r = 0;
  unsigned k = 0;
  std::optional<unsigned> k_prime;
  u64 w = 0;                     // W(r, k)
  std::optional<u64> w_prime;    // W(r, k') when k' is given
  unsigned n = 0;                // floor(log_r W(r, k))

  Verdict condition1 = Verdict::not_evaluated;  // W(r,k) > W(r,k') and k > k'
  Verdict condition2 = Verdict::not_evaluated;  // W(r,k') < r^n
  Verdict condition3 = Verdict::not_evaluated;  // 3 <= k' < sqrt(n+1)

  bool k_lower_bound_holds = false;  // k^2 >= n+1
  bool conclusion_holds = false;     // W < r^(n+1) and n+1 <= k^2
  u64 k_squared = 0;
};

/// Values that stand in for registry lookups.
struct TheoremOverrides {
  std::optional<u64> w;
  std::optional<u64> w_prime;
};

/// Throws MissingRecord for an unresolvable pair and std::invalid_argument
/// when k' >= k. Throws std::logic_error if k^2 >= n+1 ever coexists with a
/// failed conclusion.
TheoremReport check_theorem(const Registry& registry, unsigned r, unsigned k,
                            std::optional<unsigned> k_prime = std::nullopt,
                            const TheoremOverrides& overrides = {});

struct LogBound {
  bool holds = false;
  unsigned n_plus_1 = 0;
  u64 k_squared = 0;
};

/// `standard` enforces r >= 2, k >= 3; `relaxed` only needs r >= 2, k >= 1.
enum class Domain { standard, relaxed };

/// log_r(w) < k^2, decided as floor_log(w, r) + 1 <= k^2.
LogBound verify_log_bound(unsigned r, unsigned k, u64 w, Domain domain = Domain::standard);

struct Table1Row {
  unsigned r = 0;
  unsigned k = 0;
  unsigned n = 0;
  u64 w = 0;
  std::string exponent;  // log_r W, rounded
  std::string r_pow_n;   // "r^n"
};

struct Table2Row {
  unsigned r = 0;
  unsigned k = 0;
  std::string sqrt_n_plus_1;
  unsigned n = 0;
  std::string ln_r;
  std::string ln_k;
  std::string r_pow_n;
  u64 w = 0;
  std::string r_pow_n_plus_1;
  std::string r_pow_k_squared;
};

std::vector<Table1Row> table1(const Registry& registry, unsigned places = 5);
std::vector<Table2Row> table2(const Registry& registry);

/// sqrt(v): the integer itself for perfect squares, otherwise truncated
/// to `places` decimals ("3.316" for 11).
std::string sqrt_display(u64 v, unsigned places = 3);

/// ln(v) truncated to `places` decimals, the convention of the
/// natural-log table columns (ln 4 -> "1.3862", ln 6 -> "1.7917").
std::string ln_display(u64 v, unsigned places = 4);

}  // namespace vdw::bounds
