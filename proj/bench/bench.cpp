// Serial reference vs OpenMP kernels: the progression scan and the search.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vdw/ap_check.hpp"
#include "vdw/search.hpp"

using namespace vdw::search;
using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double timed(F&& f, int reps) {
  const auto t = Clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(Clock::now() - t).count() / reps;
}

void bench_scan(std::size_t length, unsigned r, unsigned k, int reps) {
  std::mt19937_64 rng(42);
  Coloring c{r, std::vector<std::uint8_t>(length)};
  for (auto& x : c.colors) x = static_cast<std::uint8_t>(rng() % r);
  bool a = false, b = false;
  const double serial = timed([&] { a = ap_free(c, k); }, reps);
  const double parallel = timed([&] { b = ap_free_parallel(c, k); }, reps);
  std::printf("scan     N=%-6zu r=%u k=%-2u free=%d  serial %9.4f s  parallel %9.4f s  speedup %.2f%s\n", length, r, k,
              a, serial, parallel, serial / parallel, a == b ? "" : "  MISMATCH");
}

void bench_search(unsigned r, unsigned k, unsigned threads) {
  SearchOptions canon;
  const SearchOutcome x = compute_vdw(r, k, canon);
  SearchOptions par;
  par.mode = Mode::parallel;
  par.threads = threads;
  const SearchOutcome y = compute_vdw(r, k, par);
  const bool agree = x.status == y.status && x.value == y.value;
  std::printf("search   W(%u,%u)=%-4llu canonical %8.3f s %11llu nodes  parallel %8.3f s %11llu nodes  speedup %.2f%s\n",
              r, k, static_cast<unsigned long long>(x.value), x.stats.elapsed_seconds,
              static_cast<unsigned long long>(x.stats.nodes), y.stats.elapsed_seconds,
              static_cast<unsigned long long>(y.stats.nodes), x.stats.elapsed_seconds / y.stats.elapsed_seconds,
              agree ? "" : "  MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel kernels"};
  bool full = false;
  unsigned threads = 0;
  int reps = 3;
  app.add_flag("--full", full, "include W(4,3) and W(2,5)");
  app.add_option("--threads", threads, "0 = OpenMP default");
  app.add_option("--reps", reps)->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  if (threads) omp_set_num_threads(static_cast<int>(threads));
  std::printf("threads %d\n", threads ? static_cast<int>(threads) : omp_get_max_threads());

  bench_scan(2000, 4, 11, reps);
  bench_scan(5000, 4, 12, reps);
  bench_scan(20000, 8, 10, reps);

  std::vector<std::pair<unsigned, unsigned>> pairs{{2, 3}, {3, 3}, {2, 4}};
  if (full) {
    pairs.emplace_back(4, 3);
    pairs.emplace_back(2, 5);
  }
  for (auto [r, k] : pairs) bench_search(r, k, threads);
}
