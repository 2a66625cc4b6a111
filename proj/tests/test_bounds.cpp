#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "vdw/bounds.hpp"
#include "vdw/radix.hpp"

using namespace vdw;
using namespace vdw::bounds;

namespace {

struct ExpectedRow {
  unsigned r, k, n;
  u64 w;
  const char* sqrt_cell;
  const char* ln_r;
  const char* ln_k;
  const char* pow_n;
  const char* pow_n1;
  const char* pow_k2;
};

// Expected table 2 cells.
const ExpectedRow kTable2[] = {
    {2, 3, 3, 9, "2", "0.6931", "1.0986", "2^3", "2^4", "2^9"},
    {2, 4, 5, 35, "2.449", "0.6931", "1.3862", "2^5", "2^6", "2^16"},
    {2, 5, 7, 178, "2.828", "0.6931", "1.6094", "2^7", "2^8", "2^25"},
    {2, 6, 10, 1132, "3.316", "0.6931", "1.7917", "2^10", "2^11", "2^36"},
    {3, 3, 3, 27, "2", "1.0986", "1.0986", "3^3", "3^4", "3^9"},
    {3, 4, 5, 293, "2.449", "1.0986", "1.3862", "3^5", "3^6", "3^16"},
    {4, 3, 3, 76, "2", "1.3862", "1.0986", "4^3", "4^4", "4^9"},
};

std::string truncated(long double x, int places) {
  const long double scale = std::pow(10.0L, places);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lf", places, std::floor(x * scale) / scale);
  return buf;
}

}  // namespace

TEST_CASE("theorem instances") {
  const Registry reg = Registry::seeded();

  const TheoremReport a = check_theorem(reg, 2, 6, 3u);
  CHECK(a.n == 10);
  CHECK(a.w == 1132);
  CHECK(a.w_prime == 9u);
  CHECK(a.condition1 == Verdict::holds);
  CHECK(a.condition2 == Verdict::holds);
  CHECK(a.condition3 == Verdict::holds);
  CHECK(a.k_lower_bound_holds);
  CHECK(a.k_squared == 36);
  CHECK(a.conclusion_holds);

  const TheoremReport b = check_theorem(reg, 2, 3);
  CHECK(b.n == 3);
  CHECK(b.condition3 == Verdict::vacuous);
  CHECK(b.condition1 == Verdict::not_evaluated);
  CHECK(b.k_lower_bound_holds);
  CHECK(b.conclusion_holds);

  const TheoremReport c = check_theorem(reg, 3, 3);
  CHECK(c.n == 3);
  CHECK(c.conclusion_holds);

  CHECK_THROWS_AS(check_theorem(reg, 2, 6, 7u), std::invalid_argument);
  CHECK_THROWS_AS(check_theorem(reg, 2, 6, 6u), std::invalid_argument);
  CHECK_THROWS_AS(check_theorem(reg, 2, 7), MissingRecord);
  CHECK_THROWS_AS(check_theorem(reg, 2, 5, 2u), std::exception);
}

TEST_CASE("condition 3 needs an integer in [3, sqrt(n+1))") {
  const Registry reg = Registry::seeded();
  for (const auto& rec : reg.records()) {
    const TheoremReport rep = check_theorem(reg, rec.r, rec.k);
    if (rep.n <= 7) CHECK(rep.condition3 == Verdict::vacuous);
  }
  // n = 8: [3, 3) is empty.
  const TheoremReport edge = check_theorem(reg, 2, 6, 3u, {.w = 300, .w_prime = std::nullopt});
  CHECK(edge.n == 8);
  CHECK(edge.condition3 == Verdict::vacuous);
  // n = 10: 3 is in range, 4 is not.
  CHECK(check_theorem(reg, 2, 6, 4u).condition3 == Verdict::fails);
}

TEST_CASE("implication k^2 >= n+1 => conclusion over synthetic values") {
  const Registry reg = Registry::seeded();
  for (u64 w = 3; w < 5000; w += 7) {
    const TheoremReport rep = check_theorem(reg, 2, 3, std::nullopt, {.w = w, .w_prime = std::nullopt});
    CHECK(rep.n == radix::floor_log(w, 2));
    if (rep.k_lower_bound_holds) CHECK(rep.conclusion_holds);
    CHECK(rep.k_lower_bound_holds == (rep.n + 1 <= 9));
  }
}

TEST_CASE("log bound") {
  auto lb = verify_log_bound(2, 6, 1132);
  CHECK(lb.holds);
  CHECK(lb.n_plus_1 == 11);
  CHECK(lb.k_squared == 36);

  lb = verify_log_bound(4, 3, 76);
  CHECK(lb.holds);
  CHECK(lb.n_plus_1 == 4);
  CHECK(lb.k_squared == 9);

  lb = verify_log_bound(2, 2, 16, Domain::relaxed);
  CHECK_FALSE(lb.holds);
  CHECK(lb.n_plus_1 == 5);
  CHECK(lb.k_squared == 4);

  CHECK_THROWS(verify_log_bound(2, 2, 16));
  CHECK_THROWS(verify_log_bound(1, 3, 16));
  CHECK_THROWS(verify_log_bound(2, 3, 0));

  for (const auto& rec : Registry::seeded().records()) CHECK(verify_log_bound(rec.r, rec.k, rec.value).holds);
}

TEST_CASE("table 1") {
  const auto rows = table1(Registry::seeded());
  REQUIRE(rows.size() == 7);
  CHECK(rows[2].r == 2);
  CHECK(rows[2].k == 5);
  CHECK(rows[2].n == 7);
  CHECK(rows[2].w == 178);
  CHECK(rows[2].r_pow_n == "2^7");
  CHECK(rows[5].n == 5);
  CHECK(rows[5].w == 293);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].n == kTable2[i].n);
    CHECK(rows[i].w == kTable2[i].w);
    CHECK(rows[i].exponent.substr(0, rows[i].exponent.find('.')) == std::to_string(kTable2[i].n));
  }
  CHECK(rows[0].exponent == "3.16993");
  CHECK(rows[4].exponent == "3.00000");
  CHECK(table1(Registry::seeded(), 2)[0].exponent == "3.17");
}

TEST_CASE("table 2 cells") {
  const auto rows = table2(Registry::seeded());
  REQUIRE(rows.size() == 7);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ExpectedRow& p = kTable2[i];
    CAPTURE(i);
    CHECK(rows[i].r == p.r);
    CHECK(rows[i].k == p.k);
    CHECK(rows[i].n == p.n);
    CHECK(rows[i].w == p.w);
    CHECK(rows[i].sqrt_n_plus_1 == p.sqrt_cell);
    CHECK(rows[i].ln_r == p.ln_r);
    CHECK(rows[i].ln_k == p.ln_k);
    CHECK(rows[i].r_pow_n == p.pow_n);
    CHECK(rows[i].r_pow_n_plus_1 == p.pow_n1);
    CHECK(rows[i].r_pow_k_squared == p.pow_k2);
    CHECK(p.w < checked_pow(p.r, p.n + 1));
    CHECK(p.n + 1 <= p.k * p.k);
  }
}

TEST_CASE("display helpers") {
  for (u64 v : {2u, 3u, 4u, 5u, 6u, 7u, 10u, 100u}) {
    CHECK(ln_display(v) == truncated(std::log(static_cast<long double>(v)), 4));
  }
  for (u64 v : {2u, 3u, 5u, 6u, 8u, 11u, 99u}) {
    CHECK(sqrt_display(v) == truncated(std::sqrt(static_cast<long double>(v)), 3));
  }
  CHECK(sqrt_display(4) == "2");
  CHECK(sqrt_display(11) == "3.316");
  CHECK(sqrt_display(11, 6) == "3.316624");
}
