#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>
#include <type_traits>

#include <omp.h>

#include "board.hpp"
#include "board3.hpp"
#include "dfs.hpp"
#include "vdw/search.hpp"

namespace vdw::search {

using detail::Board;
using detail::Clock;
using detail::Dfs;
using detail::Limits;
using detail::Order;
using detail::Prefix;
using detail::Result;
using detail::SmallBoard3;

namespace {

using Colors = std::vector<std::uint8_t>;

constexpr std::uint64_t kProbeFloor = std::uint64_t{1} << 17;
constexpr std::size_t kMaxOrbits = std::size_t{1} << 20;

struct Counters {
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> budget_hit{false};
  std::size_t max_depth = 0;
};

Limits make_limits(const Budget& budget, Clock::time_point start, Counters& counters) {
  Limits limits;
  if (budget.max_seconds) {
    limits.deadline = start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*budget.max_seconds));
  }
  limits.max_nodes = budget.max_nodes.value_or(0);
  limits.nodes = &counters.nodes;
  limits.stop = &counters.stop;
  limits.budget_hit = &counters.budget_hit;
  return limits;
}

// Renames colors in order of first appearance (position 1 gets color 0).
// Among all renamings of a coloring this is the lexicographically least.
void relabel_by_first_appearance(Colors& colors) {
  std::array<int, 256> map;
  map.fill(-1);
  int next = 0;
  for (auto& c : colors) {
    if (map[c] < 0) map[c] = next++;
    c = static_cast<std::uint8_t>(map[c]);
  }
}

// Least coloring in the orbit of `colors` under renaming and reversal.
Colors orbit_minimum(Colors colors) {
  Colors mirrored(colors.rbegin(), colors.rend());
  relabel_by_first_appearance(colors);
  relabel_by_first_appearance(mirrored);
  return std::min(colors, mirrored);
}

// Calls f(type_identity<B>{}) with the fastest board able to hold the
// instance.
template <class F>
decltype(auto) with_board(unsigned r, unsigned k, std::size_t n, F&& f) {
  if (SmallBoard3::supports(r, k, n)) return f(std::type_identity<SmallBoard3>{});
  return f(std::type_identity<Board>{});
}

int thread_count(unsigned threads) { return threads ? static_cast<int>(threads) : omp_get_max_threads(); }

struct Solved {
  Result result;
  Colors colors;
};

template <class B>
Solved solve_serial(unsigned r, unsigned k, std::size_t n, const Limits& limits, Counters& counters,
                    Order order = Order::most_constrained, bool mirror = true) {
  B board(r, k, n);
  Dfs<B> dfs(limits, order, mirror);
  Result res = dfs.run(board);
  counters.max_depth = std::max(counters.max_depth, dfs.max_depth());
  if (res == Result::sat) return {res, board.snapshot()};
  return {res, {}};
}

template <class B>
std::vector<Prefix> split(unsigned r, unsigned k, std::size_t n, int nthreads, std::vector<Colors>& complete,
                          Counters& counters) {
  std::uint64_t split_nodes = 0;
  B board(r, k, n);
  auto subtrees = detail::split_subtrees(board, std::size_t(16) * static_cast<std::size_t>(nthreads), true,
                                         complete, split_nodes);
  counters.nodes.fetch_add(split_nodes);
  return subtrees;
}

template <class B>
Solved solve_parallel(unsigned r, unsigned k, std::size_t n, unsigned threads, const Limits& limits,
                      Counters& counters) {
  const int nthreads = thread_count(threads);
  std::vector<Colors> complete;
  const auto subtrees = split<B>(r, k, n, nthreads, complete, counters);
  if (!complete.empty()) return {Result::sat, complete.front()};
  if (subtrees.empty()) return {Result::unsat, {}};

  std::atomic<bool> found{false};
  std::size_t found_index = subtrees.size();
  Colors found_colors;
  std::size_t deepest = 0;

  // Workers share the node budget and deadline; a solution in any subtree
  // stops the rest.
  std::atomic<bool> local_stop{false};
  Limits worker_limits = limits;
  worker_limits.stop = &local_stop;
  const auto count = static_cast<long long>(subtrees.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads) reduction(max : deepest)
  for (long long i = 0; i < count; ++i) {
    if (local_stop.load(std::memory_order_relaxed)) continue;
    const Prefix& prefix = subtrees[static_cast<std::size_t>(i)];
    B board(r, k, n);
    bool ok = true;
    for (auto [p, c] : prefix) ok = ok && board.assign(p, c);
    if (!ok) continue;
    Dfs<B> dfs(worker_limits, Order::most_constrained, true);
    Result res = dfs.run(board);
    deepest = std::max(deepest, dfs.max_depth() + prefix.size());
    if (res == Result::sat) {
#pragma omp critical(vdw_found)
      {
        if (static_cast<std::size_t>(i) < found_index) {
          found_index = static_cast<std::size_t>(i);
          found_colors = board.snapshot();
        }
      }
      found.store(true);
      local_stop.store(true);
    }
  }

  counters.max_depth = std::max(counters.max_depth, deepest);
  if (found.load()) return {Result::sat, found_colors};
  if (limits.budget_hit && limits.budget_hit->load()) return {Result::aborted, {}};
  return {Result::unsat, {}};
}

// Every valid coloring of 1..n up to renaming and reversal, as the
// least member of each orbit, sorted. Parallel runs split the same tree
// and merge, so the set does not depend on the schedule.
struct Orbits {
  Result result = Result::unsat;  // unsat: complete; aborted: budget
  bool overflow = false;          // more than max_orbits; `colors` is partial
  std::vector<Colors> colors;
};

void settle(std::vector<Colors>& colors) {
  std::sort(colors.begin(), colors.end());
  colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
}

template <class B>
Orbits enumerate_orbits(unsigned r, unsigned k, std::size_t n, bool parallel, unsigned threads,
                        const Limits& limits, Counters& counters, std::size_t max_orbits) {
  Orbits out;
  // Overflow raises a private stop flag so the walk unwinds at its next
  // poll; budget limits still come from the caller's flags.
  std::atomic<bool> full{false};
  std::atomic<bool> halt{false};
  Limits walk_limits = limits;
  walk_limits.stop = &halt;
  auto collect = [&](std::vector<Colors>& into, const Colors& colors) {
    into.push_back(orbit_minimum(colors));
    // Both images of a coloring may be visited; dedupe in batches.
    if (into.size() > 2 * max_orbits) {
      settle(into);
      if (into.size() > max_orbits) {
        full.store(true);
        halt.store(true);
      }
    }
  };

  if (!parallel) {
    B board(r, k, n);
    Dfs<B> dfs(walk_limits, Order::most_constrained, true);
    out.result = dfs.enumerate(board, [&](const B& b) { collect(out.colors, b.snapshot()); });
    counters.max_depth = std::max(counters.max_depth, dfs.max_depth());
  } else {
    const int nthreads = thread_count(threads);
    std::vector<Colors> complete;
    const auto subtrees = split<B>(r, k, n, nthreads, complete, counters);
    for (const Colors& c : complete) collect(out.colors, c);
    std::size_t deepest = 0;
    const auto count = static_cast<long long>(subtrees.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads) reduction(max : deepest)
    for (long long i = 0; i < count; ++i) {
      if (halt.load(std::memory_order_relaxed)) continue;
      const Prefix& prefix = subtrees[static_cast<std::size_t>(i)];
      B board(r, k, n);
      bool ok = true;
      for (auto [p, c] : prefix) ok = ok && board.assign(p, c);
      if (!ok) continue;
      std::vector<Colors> local;
      Dfs<B> dfs(walk_limits, Order::most_constrained, true);
      dfs.enumerate(board, [&](const B& b) { collect(local, b.snapshot()); });
      deepest = std::max(deepest, dfs.max_depth() + prefix.size());
#pragma omp critical(vdw_orbits)
      {
        out.colors.insert(out.colors.end(), local.begin(), local.end());
        settle(out.colors);
        if (out.colors.size() > max_orbits) {
          full.store(true);
          halt.store(true);
        }
      }
    }
    counters.max_depth = std::max(counters.max_depth, deepest);
    out.result = halt.load() ? Result::aborted : Result::unsat;
  }

  settle(out.colors);
  out.overflow = full.load();
  if (!out.overflow && halt.load()) {
    // A budget limit stopped the walk; pass it on to the caller's flags.
    out.result = Result::aborted;
    if (limits.stop) limits.stop->store(true);
  }
  return out;
}

// Orbits of length n+1 from the orbits of length n. Dropping the last
// position of a valid coloring leaves a valid one, so every orbit of
// length n+1 is reached by appending a color to some representative or
// to its mirror image.
std::vector<Colors> extend_orbits(const std::vector<Colors>& level, unsigned r, unsigned k) {
  std::vector<Colors> next;
  for (const Colors& rep : level) {
    for (int side = 0; side < 2; ++side) {
      Colors x = side == 0 ? rep : Colors(rep.rbegin(), rep.rend());
      x.push_back(0);
      for (unsigned c = 0; c < r; ++c) {
        x.back() = static_cast<std::uint8_t>(c);
        if (last_position_check(x, k, x.size())) next.push_back(orbit_minimum(x));
      }
    }
  }
  settle(next);
  return next;
}

void validate_params(unsigned r, unsigned k) {
  if (r < 2 || r > Board::kMaxColors) throw std::invalid_argument("search: r must be in [2, 32]");
  if (k < 3 || k > 64) throw std::invalid_argument("search: k must be in [3, 64]");
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::exact: return "exact";
    case Status::lower_bound_only: return "lower-bound-only";
    case Status::budget_exhausted: return "budget-exhausted";
  }
  return "?";
}

std::string_view to_string(Mode m) { return m == Mode::canonical ? "canonical" : "parallel"; }

std::optional<Coloring> lex_first_coloring(unsigned r, unsigned k, std::size_t length) {
  validate_params(r, k);
  // The first coloring in ascending position order is the
  // lexicographically first one. Far below W it turns up at once; near W
  // listing every orbit is much cheaper than the ascending walk.
  auto ascending = [&](std::uint64_t max_nodes) {
    Counters counters;
    Limits limits;
    limits.nodes = &counters.nodes;
    limits.max_nodes = max_nodes;
    limits.budget_hit = &counters.budget_hit;
    return with_board(r, k, length, [&]<class B>(std::type_identity<B>) {
      return solve_serial<B>(r, k, length, limits, counters, Order::ascending, false);
    });
  };
  auto found = [&](const Solved& s) -> std::optional<Coloring> {
    if (s.result == Result::sat) return Coloring{r, s.colors};
    return std::nullopt;
  };

  const Solved quick = ascending(kProbeFloor);
  if (quick.result != Result::aborted) return found(quick);

  Counters counters;
  Limits limits;
  limits.nodes = &counters.nodes;
  const Orbits orbits = with_board(r, k, length, [&]<class B>(std::type_identity<B>) {
    return enumerate_orbits<B>(r, k, length, false, 0, limits, counters, kMaxOrbits);
  });
  if (!orbits.overflow) {
    if (orbits.colors.empty()) return std::nullopt;
    return Coloring{r, orbits.colors.front()};
  }
  return found(ascending(0));
}

SearchOutcome compute_vdw(unsigned r, unsigned k, const SearchOptions& options) {
  validate_params(r, k);
  const auto start = Clock::now();
  Counters counters;
  const Limits limits = make_limits(options.budget, start, counters);
  const bool parallel = options.mode == Mode::parallel;
  const unsigned threads = options.threads;

  Colors best;  // longest known progression-free coloring
  std::optional<std::vector<Colors>> orbits;  // all orbits of length best.size(), once enumerated
  bool enumeration_failed = false;
  Status status = Status::budget_exhausted;

  auto report = [&] {
    if (options.on_progress) options.on_progress(best.size(), counters.nodes.load());
  };
  auto out_of_budget = [&] {
    const bool hit = (limits.max_nodes && counters.nodes.load() >= limits.max_nodes) ||
                     (limits.deadline && Clock::now() >= *limits.deadline);
    if (hit) counters.budget_hit.store(true);
    return hit || counters.budget_hit.load();
  };

  // Without the full enumeration the canonical certificate comes from a
  // separate pass: the first coloring in ascending position order is the
  // lexicographically first one.
  auto settle_lex_first = [&] {
    if (parallel) return;
    const Solved first = with_board(r, k, best.size(), [&]<class B>(std::type_identity<B>) {
      return solve_serial<B>(r, k, best.size(), limits, counters, Order::ascending, false);
    });
    if (first.result == Result::sat) best = first.colors;
  };

  for (;;) {
    if (options.budget.max_length && best.size() >= *options.budget.max_length) {
      status = Status::lower_bound_only;
      break;
    }
    const std::size_t target = best.size() + 1;

    if (orbits) {
      // Everything of length best.size() is known: the next length
      // follows without search.
      auto next = extend_orbits(*orbits, r, k);
      if (next.empty()) {
        status = Status::exact;
        break;
      }
      orbits = std::move(next);
      best = orbits->front();
      report();
      continue;
    }

    // Cheap step first: append one color, checked against the
    // progressions ending at the new position.
    const unsigned in_use = best.empty() ? 0u : *std::max_element(best.begin(), best.end()) + 1u;
    bool extended = false;
    for (unsigned c = 0; c < std::min(r, in_use + 1); ++c) {
      best.push_back(static_cast<std::uint8_t>(c));
      if (last_position_check(best, k, best.size())) {
        extended = true;
        break;
      }
      best.pop_back();
    }
    if (extended) {
      report();
      continue;
    }

    // A probe for a coloring of the next length may spend as much as
    // everything so far (at least kProbeFloor nodes). Past that, or when
    // the probe proves there is none, the current length is enumerated.
    Limits probe = limits;
    std::atomic<bool> capped{false};
    std::atomic<bool> probe_stop{false};
    probe.budget_hit = &capped;
    probe.stop = &probe_stop;
    if (!enumeration_failed) {
      const std::uint64_t spent = counters.nodes.load();
      const std::uint64_t cap = spent + std::max(kProbeFloor, spent);
      probe.max_nodes = limits.max_nodes ? std::min(limits.max_nodes, cap) : cap;
    }
    const Solved solved = with_board(r, k, target, [&]<class B>(std::type_identity<B>) {
      return parallel ? solve_parallel<B>(r, k, target, threads, probe, counters)
                     : solve_serial<B>(r, k, target, probe, counters);
    });
    if (solved.result == Result::sat) {
      best = solved.colors;
      relabel_by_first_appearance(best);
      report();
      continue;
    }
    if (solved.result == Result::aborted && out_of_budget()) break;
    if (enumeration_failed) {
      // Only reachable with an uncapped probe, which therefore finished.
      status = Status::exact;
      settle_lex_first();
      break;
    }

    Orbits found = with_board(r, k, best.size(), [&]<class B>(std::type_identity<B>) {
      return enumerate_orbits<B>(r, k, best.size(), parallel, threads, limits, counters, kMaxOrbits);
    });
    if (found.result == Result::aborted && !found.overflow) break;  // budget
    if (found.overflow) {
      enumeration_failed = true;
      if (solved.result == Result::unsat) {
        status = Status::exact;
        settle_lex_first();
        break;
      }
      continue;
    }
    orbits = std::move(found.colors);
    best = orbits->front();
  }

  SearchOutcome out;
  out.status = status;
  out.value = best.size() + 1;
  out.certificate.r = r;
  out.certificate.k = k;
  out.certificate.length = best.size();
  out.certificate.coloring = Coloring{r, std::move(best)};
  out.stats.nodes = counters.nodes.load();
  out.stats.max_depth = counters.max_depth;
  out.stats.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

}  // namespace vdw::search
