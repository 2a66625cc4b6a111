#include <doctest.h>

#include <sstream>
#include <thread>
#include <vector>

#include "vdw/registry.hpp"

using namespace vdw;

TEST_CASE("seeded registry holds the seven tabulated values") {
  const Registry reg = Registry::seeded();
  CHECK(reg.size() == 7);
  const std::vector<VdwRecord> expected{
      {2, 3, 9, Provenance::paper_table},    {2, 4, 35, Provenance::paper_table},
      {2, 5, 178, Provenance::paper_table},  {2, 6, 1132, Provenance::paper_table},
      {3, 3, 27, Provenance::paper_table},   {3, 4, 293, Provenance::paper_table},
      {4, 3, 76, Provenance::paper_table},
  };
  CHECK(reg.records() == expected);
}

TEST_CASE("lookup") {
  const Registry reg = Registry::seeded();
  CHECK(reg.lookup(2, 3)->value == 9);
  CHECK(reg.lookup(2, 6)->value == 1132);
  CHECK_FALSE(reg.lookup(2, 7).has_value());
  CHECK_THROWS_AS(reg.require(2, 7), MissingRecord);
}

TEST_CASE("search results merge or conflict") {
  Registry reg = Registry::seeded();
  reg.upsert_search_result({2, 4, 35, Provenance::search_derived});
  const auto rec = reg.lookup(2, 4);
  CHECK(rec->value == 35);
  CHECK(rec->provenance.has(Provenance::paper_table));
  CHECK(rec->provenance.has(Provenance::search_derived));
  CHECK(rec->provenance.to_string() == "paper-table+search-derived");

  CHECK_THROWS_AS(reg.upsert_search_result({2, 4, 34, Provenance::search_derived}), RegistryConflict);
  CHECK(reg.lookup(2, 4)->value == 35);

  CHECK_THROWS_AS(reg.upsert_search_result({2, 4, 35, Provenance::user_supplied}), std::invalid_argument);
}

TEST_CASE("user records fill empty slots and round-trip") {
  Registry reg = Registry::seeded();
  const VdwRecord five{5, 3, 125, Provenance::user_supplied};
  reg.upsert(five);
  CHECK(reg.lookup(5, 3) == five);
  CHECK(reg.size() == 8);
}

TEST_CASE("record validation") {
  CHECK_THROWS_AS(validate({1, 3, 9, Provenance::user_supplied}), std::invalid_argument);
  CHECK_THROWS_AS(validate({2, 2, 9, Provenance::user_supplied}), std::invalid_argument);
  CHECK_THROWS_AS(validate({2, 5, 4, Provenance::user_supplied}), std::invalid_argument);
  CHECK_NOTHROW(validate({2, 5, 5, Provenance::user_supplied}));
  Registry reg;
  CHECK_THROWS(reg.upsert({2, 5, 4, Provenance::user_supplied}));
}

TEST_CASE("extension file") {
  Registry reg = Registry::seeded();
  std::istringstream in(
      "# extra values\n"
      "\n"
      "5 3 170 user-supplied   # trailing comment\n"
      "2 3 9 search-derived\n");
  reg.load_extension(in);
  CHECK(reg.lookup(5, 3)->value == 170);
  CHECK(reg.lookup(2, 3)->provenance.to_string() == "paper-table+search-derived");

  std::istringstream bad("5 3 170 user-supplied\n6 3\n");
  Registry r2;
  try {
    r2.load_extension(bad);
    FAIL("expected a parse error");
  } catch (const RegistryParseError& e) {
    CHECK(e.line == 2);
  }

  std::istringstream tag("5 3 170 guessed\n");
  CHECK_THROWS_AS(r2.load_extension(tag), RegistryParseError);

  std::istringstream conflict("2 3 10 user-supplied\n");
  CHECK_THROWS_AS(reg.load_extension(conflict), RegistryConflict);
}

TEST_CASE("concurrent readers with a serialized writer") {
  Registry reg = Registry::seeded();
  std::vector<std::thread> pool;
  std::atomic<int> misses{0};
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&] {
      for (int i = 0; i < 2000; ++i) {
        if (!reg.lookup(3, 3) || reg.lookup(3, 3)->value != 27) ++misses;
      }
    });
  }
  pool.emplace_back([&] {
    for (unsigned k = 3; k < 200; ++k) reg.upsert({9, k, 1000 + k, Provenance::user_supplied});
  });
  for (auto& t : pool) t.join();
  CHECK(misses == 0);
  CHECK(reg.size() == 7 + 197);
}
