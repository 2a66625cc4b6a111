#include <doctest.h>

#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

#include "search/board.hpp"
#include "search/board3.hpp"
#include "vdw/certificate.hpp"
#include "vdw/search.hpp"

using namespace vdw::search;
using Colors = std::vector<std::uint8_t>;

namespace {

// Reference scan written independently of the library.
bool brute_free(const Colors& c, unsigned k) {
  const std::size_t n = c.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t d = 1; a + (k - 1) * d < n; ++d) {
      bool mono = true;
      for (unsigned j = 1; j < k && mono; ++j) mono = c[a + j * d] == c[a];
      if (mono) return false;
    }
  }
  return true;
}

bool brute_ends_at(const Colors& c, unsigned k, std::size_t i) {
  const Colors prefix(c.begin(), c.begin() + static_cast<long>(i));
  Colors shorter(prefix.begin(), prefix.end() - 1);
  return brute_free(prefix, k) || !brute_free(shorter, k);
}

// Plain ascending backtracking. Colors are opened in order, so the first
// complete coloring is the lexicographically first one.
std::optional<Colors> naive_first(unsigned r, unsigned k, std::size_t n) {
  Colors c;
  std::function<bool(unsigned)> go = [&](unsigned used) {
    if (c.size() == n) return true;
    for (unsigned col = 0; col < std::min(r, used + 1); ++col) {
      c.push_back(static_cast<std::uint8_t>(col));
      bool ok = true;
      const std::size_t i = c.size() - 1;
      for (std::size_t d = 1; ok && (k - 1) * d <= i; ++d) {
        unsigned j = 1;
        while (j < k && c[i - j * d] == col) ++j;
        ok = j < k;
      }
      if (ok && go(std::max(used, col + 1))) return true;
      c.pop_back();
    }
    return false;
  };
  if (go(0)) return c;
  return std::nullopt;
}

Colors random_colors(std::mt19937_64& rng, unsigned r, std::size_t n) {
  Colors c(n);
  for (auto& x : c) x = static_cast<std::uint8_t>(rng() % r);
  return c;
}

}  // namespace

TEST_CASE("ap_free examples") {
  CHECK_FALSE(ap_free({2, {0, 0, 0}}, 3));
  CHECK(ap_free({2, {0, 0, 1, 1, 0, 0, 1, 1}}, 3));
  CHECK(brute_free({0, 0, 1, 1, 0, 0, 1, 1}, 3));
  CHECK(ap_free({2, {0, 0}}, 3));
  CHECK(ap_free({2, {}}, 3));
  CHECK(ap_free({5, {0, 0, 0, 0}}, 5));
}

TEST_CASE("find_monochromatic_ap") {
  const auto ap = find_monochromatic_ap(Colors{0, 1, 0, 1, 0}, 3);
  REQUIRE(ap);
  CHECK(ap->start == 1);
  CHECK(ap->step == 2);
  CHECK(ap->color == 0);
  CHECK_FALSE(find_monochromatic_ap(Colors{0, 0, 1, 1, 0, 0, 1, 1}, 3));
}

TEST_CASE("last_position_check examples") {
  Colors c{0, 0, 1, 1, 0, 0, 1, 1, 0};
  CHECK_FALSE(last_position_check(c, 3, 9));
  CHECK_FALSE(brute_ends_at(c, 3, 9));
  CHECK(last_position_check(Colors{0}, 3, 1));
  CHECK(last_position_check(Colors{0}, 7, 1));
  CHECK_FALSE(last_position_check(Colors{0, 1, 0, 1, 0}, 3, 5));
}

TEST_CASE("reference scans agree with an independent one") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 4000; ++t) {
    const unsigned r = 2 + rng() % 3, k = 3 + rng() % 3;
    const Colors c = random_colors(rng, r, rng() % 45);
    const bool expect = brute_free(c, k);
    CHECK(ap_free({r, c}, k) == expect);
    CHECK(ap_free_parallel({r, c}, k) == expect);
    CHECK(find_monochromatic_ap(c, k).has_value() == !expect);
  }
}

TEST_CASE("incremental acceptance equals the reference scan") {
  std::mt19937_64 rng(2);
  int disagreements = 0;
  for (int t = 0; t < 10000; ++t) {
    const unsigned r = 2 + rng() % 2;
    const Colors c = random_colors(rng, r, 1 + rng() % 40);
    bool incremental = true;
    for (std::size_t i = 1; i <= c.size(); ++i) incremental = incremental && last_position_check(c, 3, i);
    if (incremental != ap_free({r, c}, 3)) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("bit-parallel board matches the generic board") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 3000; ++t) {
    const unsigned r = 2 + rng() % 4;
    const std::size_t n = 3 + rng() % 100;
    detail::Board a(r, 3, n);
    detail::SmallBoard3 b(r, 3, n);
    for (int step = 0; step < 40; ++step) {
      const std::size_t pos = 1 + rng() % n;
      if (a.color(pos) >= 0) continue;
      const unsigned c = rng() % r;
      if (!(a.domain(pos) >> c & 1u)) continue;
      REQUIRE((b.domain(pos) >> c & 1u));
      const std::size_t ma = a.mark(), mb = b.mark();
      const bool oka = a.assign(pos, c);
      const bool okb = b.assign(pos, c);
      REQUIRE(oka == okb);
      if (!oka) {
        a.undo(ma);
        b.undo(mb);
        continue;
      }
      for (std::size_t p = 1; p <= n; ++p) {
        REQUIRE(a.color(p) == b.color(p));
        REQUIRE(a.domain(p) == b.domain(p));
      }
      REQUIRE(a.pick_branch() == b.pick_branch());
      REQUIRE(a.colors_in_use() == b.colors_in_use());
      if (a.complete()) {
        CHECK(brute_free(a.snapshot(), 3));
        break;
      }
    }
  }
}

TEST_CASE("a complete board is progression-free") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 500; ++t) {
    const unsigned r = 2 + rng() % 2, k = 3 + rng() % 3;
    const std::size_t n = 5 + rng() % 20;
    detail::Board board(r, k, n);
    bool ok = true;
    for (std::size_t p = 1; p <= n && ok; ++p) {
      if (board.color(p) >= 0) continue;
      const std::uint32_t dom = board.domain(p);
      std::vector<unsigned> choices;
      for (unsigned c = 0; c < r; ++c) {
        if (dom >> c & 1u) choices.push_back(c);
      }
      ok = !choices.empty() && board.assign(p, choices[rng() % choices.size()]);
    }
    if (ok) CHECK(brute_free(board.snapshot(), k));
  }
}

TEST_CASE("lexicographically first colorings") {
  for (auto [r, k, n] : {std::tuple{2u, 3u, 8u}, {2u, 3u, 6u}, {3u, 3u, 26u}, {3u, 3u, 20u}, {2u, 4u, 34u},
                         {2u, 4u, 25u}, {2u, 5u, 40u}, {3u, 4u, 30u}}) {
    CAPTURE(r);
    CAPTURE(k);
    CAPTURE(n);
    const auto got = lex_first_coloring(r, k, n);
    const auto expect = naive_first(r, k, n);
    REQUIRE(got.has_value() == expect.has_value());
    CHECK(got->colors == *expect);
    CHECK(got->r == r);
    CHECK(brute_free(got->colors, k));
  }
  CHECK_FALSE(lex_first_coloring(2, 3, 9).has_value());
  CHECK_FALSE(naive_first(2, 3, 9).has_value());
  CHECK_FALSE(lex_first_coloring(3, 3, 27).has_value());
}

TEST_CASE("small numbers by search") {
  struct Case {
    unsigned r, k;
    std::uint64_t w;
  };
  for (Case c : {Case{2, 3, 9}, Case{3, 3, 27}, Case{2, 4, 35}}) {
    CAPTURE(c.r);
    CAPTURE(c.k);
    const SearchOutcome out = compute_vdw(c.r, c.k);
    CHECK(out.status == Status::exact);
    CHECK(out.value == c.w);
    CHECK(out.certificate.length == c.w - 1);
    CHECK(verify_certificate(out.certificate));
    CHECK(out.certificate.coloring.colors == *naive_first(c.r, c.k, c.w - 1));
    CHECK_FALSE(naive_first(c.r, c.k, c.w).has_value());
    CHECK(out.stats.nodes > 0);

    SearchOptions par;
    par.mode = Mode::parallel;
    const SearchOutcome p = compute_vdw(c.r, c.k, par);
    CHECK(p.status == out.status);
    CHECK(p.value == out.value);
    CHECK(verify_certificate(p.certificate));
  }
  CHECK(compute_vdw(2, 3).certificate.coloring.colors == Colors{0, 0, 1, 1, 0, 0, 1, 1});
}

TEST_CASE("other progression lengths use the generic board") {
  SearchOptions opt;
  opt.budget.max_length = 60;
  const SearchOutcome out = compute_vdw(3, 4, opt);
  CHECK(out.status == Status::lower_bound_only);
  CHECK(out.value == 61);
  CHECK(verify_certificate(out.certificate));
}

TEST_CASE("budgets") {
  SearchOptions opt;
  opt.budget.max_nodes = 2000;
  const SearchOutcome out = compute_vdw(2, 5, opt);
  CHECK(out.status == Status::budget_exhausted);
  CHECK(out.value == out.certificate.length + 1);
  CHECK(verify_certificate(out.certificate));

  SearchOptions timed;
  timed.budget.max_seconds = 0.5;
  std::vector<std::size_t> seen;
  timed.on_progress = [&](std::size_t best, std::uint64_t) { seen.push_back(best); };
  const SearchOutcome t = compute_vdw(2, 6, timed);
  CHECK(t.status == Status::budget_exhausted);
  CHECK(t.stats.elapsed_seconds < 5.0);
  CHECK(verify_certificate(t.certificate));
  REQUIRE_FALSE(seen.empty());
  for (std::size_t i = 1; i < seen.size(); ++i) CHECK(seen[i] > seen[i - 1]);
  CHECK(seen.back() == t.certificate.length);

  CHECK_THROWS_AS(compute_vdw(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(compute_vdw(2, 2), std::invalid_argument);
}

TEST_CASE("canonical and parallel agree on W(2,5)") {
  const SearchOutcome canon = compute_vdw(2, 5);
  CHECK(canon.status == Status::exact);
  CHECK(canon.value == 178);
  CHECK(verify_certificate(canon.certificate));

  SearchOptions par;
  par.mode = Mode::parallel;
  par.threads = 4;
  const SearchOutcome p = compute_vdw(2, 5, par);
  CHECK(p.status == Status::exact);
  CHECK(p.value == 178);
  CHECK(verify_certificate(p.certificate));
}

TEST_CASE("certificate checks") {
  Certificate good{2, 3, 8, {2, {0, 0, 1, 1, 0, 0, 1, 1}}};
  CHECK(verify_certificate(good));
  CHECK(verify_certificate(Certificate{2, 3, 0, {2, {}}}));

  Certificate nine{2, 3, 9, {2, {0, 0, 1, 1, 0, 0, 1, 1, 0}}};
  CHECK_FALSE(verify_certificate(nine));
  nine.coloring.colors.back() = 1;
  CHECK_FALSE(verify_certificate(nine));

  Certificate wrong_len = good;
  wrong_len.length = 7;
  CHECK_FALSE(verify_certificate(wrong_len));

  Certificate out_of_range = good;
  out_of_range.coloring.colors[3] = 2;
  CHECK_FALSE(verify_certificate(out_of_range));

  const SearchOutcome s = compute_vdw(2, 4);
  CHECK(s.certificate.length == 34);
  CHECK(verify_certificate(s.certificate));
}

TEST_CASE("certificate files") {
  const Certificate cert{3, 3, 26, {3, *naive_first(3, 3, 26)}};
  std::stringstream io;
  write_certificate(io, cert);
  CHECK(read_certificate(io) == cert);

  std::istringstream commented("# header\n#\n2 3 4\n0 1 1 0\n");
  const Certificate c = read_certificate(commented);
  CHECK(c.length == 4);
  CHECK(c.coloring.colors == Colors{0, 1, 1, 0});

  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_certificate(in);
    } catch (const CertificateParseError& e) {
      return e.line;
    }
    return 0;
  };
  CHECK(line_of("") == 1);
  CHECK(line_of("# only comments\n") == 2);
  CHECK(line_of("2 3\n0 1\n") == 1);
  CHECK(line_of("2 3 x\n0 1\n") == 1);
  CHECK(line_of("2 3 4\n0 1 1\n") == 2);
  CHECK(line_of("2 3 4\n0 1 a 1\n") == 2);
  CHECK(line_of("# c\n2 3 4\n") == 3);
}
