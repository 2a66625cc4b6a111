#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

namespace vdw::search::detail {

using Clock = std::chrono::steady_clock;

/// Shared stopping rules. Workers flush node counts into `nodes` and poll
/// `stop`; whoever hits a limit raises it.
struct Limits {
  std::optional<Clock::time_point> deadline;
  std::uint64_t max_nodes = 0;  // 0 = unlimited
  std::atomic<std::uint64_t>* nodes = nullptr;
  std::atomic<bool>* stop = nullptr;
  std::atomic<bool>* budget_hit = nullptr;
};

enum class Order { most_constrained, ascending };
enum class Result { sat, unsat, aborted };

// Colors worth trying at a position: those in use plus the first fresh one.
template <class B>
unsigned candidate_limit(const B& board) {
  return std::min(board.colors(), board.colors_in_use() + 1);
}

/// Reversal symmetry: a coloring and its mirror image p -> n+1-p are
/// compared along the middle-out order (pairs p, n+1-p), each with colors
/// renamed by first appearance. Only the smaller of the two is kept.
///
/// The scan is resumable: assignments only ever add information, so a
/// child continues from where its parent stopped, and once a difference
/// decides the comparison the whole subtree is settled.
struct MirrorScan {
  std::size_t index = 0;
  bool settled = false;
  std::int8_t next_mine = 0;
  std::int8_t next_theirs = 0;
  std::array<std::int8_t, 33> mine;
  std::array<std::int8_t, 33> theirs;

  MirrorScan() {
    mine.fill(-1);
    theirs.fill(-1);
  }

  /// False once the assigned part shows the board is the larger image.
  template <class B>
  bool advance(const B& board) {
    const std::size_t n = board.length();
    for (; !settled && index < n; ++index) {
      const std::size_t p = position(n, index);
      const int a = board.color(p);
      const int b = board.color(n + 1 - p);
      if (a < 0 || b < 0) return true;
      if (mine[a] < 0) mine[a] = next_mine++;
      if (theirs[b] < 0) theirs[b] = next_theirs++;
      if (mine[a] != theirs[b]) {
        if (mine[a] > theirs[b]) return false;
        settled = true;
      }
    }
    settled = true;
    return true;
  }

  // i-th position of the middle-out order: for odd n the middle alone,
  // then lo, hi, lo-1, hi+1, ... with lo = floor(n/2), hi = n+1-lo.
  static std::size_t position(std::size_t n, std::size_t i) {
    const std::size_t lo = n / 2;
    if (n % 2 == 1) {
      if (i == 0) return lo + 1;
      --i;
    }
    const std::size_t j = i / 2;
    return i % 2 == 0 ? lo - j : n + 1 - (lo - j);
  }
};

template <class B>
bool mirror_leader(const B& board) {
  MirrorScan scan;
  return scan.advance(board);
}

/// Depth-first completion of a board. Candidate colors at a position are
/// tried in ascending order, restricted to the colors already in use plus
/// one fresh color.
template <class B>
class Dfs {
 public:
  Dfs(Limits limits, Order order, bool mirror = false) : limits_(limits), order_(order), mirror_(mirror) {}

  /// On sat the board is left fully assigned; otherwise it is restored.
  Result run(B& board) {
    aborted_ = false;
    const std::size_t start = board.mark();
    Result res = descend(board, 0, MirrorScan{});
    flush();
    if (res != Result::sat) board.undo(start);
    return res;
  }

  /// Visits every complete coloring in the tree (one per symmetry class
  /// when mirror breaking is on) and restores the board. Returns unsat
  /// once the tree is exhausted, aborted on a limit.
  template <class F>
  Result enumerate(B& board, F&& on_solution) {
    aborted_ = false;
    const std::size_t start = board.mark();
    Result res = walk(board, 0, MirrorScan{}, on_solution);
    flush();
    board.undo(start);
    return res;
  }

  std::uint64_t nodes() const { return nodes_; }
  std::size_t max_depth() const { return max_depth_; }

 private:
  static constexpr std::uint64_t kPollInterval = 1024;

  Result descend(B& board, std::size_t depth, MirrorScan scan) {
    if (mirror_ && !scan.advance(board)) return Result::unsat;
    const auto pos = order_ == Order::ascending ? board.first_unassigned() : board.pick_branch();
    if (!pos) return Result::sat;
    ++nodes_;
    max_depth_ = std::max(max_depth_, depth + 1);
    if (should_stop()) return Result::aborted;

    const unsigned limit = candidate_limit(board);
    const std::uint32_t dom = board.domain(*pos);
    for (unsigned c = 0; c < limit; ++c) {
      if (!(dom >> c & 1u)) continue;
      const std::size_t m = board.mark();
      if (board.assign(*pos, c)) {
        Result res = descend(board, depth + 1, scan);
        if (res == Result::sat) return res;
        if (res == Result::aborted) {
          board.undo(m);
          return res;
        }
      }
      board.undo(m);
    }
    return Result::unsat;
  }

  template <class F>
  Result walk(B& board, std::size_t depth, MirrorScan scan, F& on_solution) {
    if (mirror_ && !scan.advance(board)) return Result::unsat;
    const auto pos = order_ == Order::ascending ? board.first_unassigned() : board.pick_branch();
    if (!pos) {
      on_solution(board);
      return Result::unsat;
    }
    ++nodes_;
    max_depth_ = std::max(max_depth_, depth + 1);
    if (should_stop()) return Result::aborted;

    const unsigned limit = candidate_limit(board);
    const std::uint32_t dom = board.domain(*pos);
    for (unsigned c = 0; c < limit; ++c) {
      if (!(dom >> c & 1u)) continue;
      const std::size_t m = board.mark();
      Result res = board.assign(*pos, c) ? walk(board, depth + 1, scan, on_solution) : Result::unsat;
      board.undo(m);
      if (res == Result::aborted) return res;
    }
    return Result::unsat;
  }

  bool should_stop() {
    if (aborted_) return true;
    if (++unflushed_ < kPollInterval) return false;
    flush();
    const auto raise = [this] {
      aborted_ = true;
      if (limits_.budget_hit) limits_.budget_hit->store(true);
      if (limits_.stop) limits_.stop->store(true);
    };
    if (limits_.stop && limits_.stop->load(std::memory_order_relaxed)) {
      aborted_ = true;
    } else if (limits_.max_nodes && limits_.nodes &&
               limits_.nodes->load(std::memory_order_relaxed) >= limits_.max_nodes) {
      raise();
    } else if (limits_.deadline && Clock::now() >= *limits_.deadline) {
      raise();
    }
    return aborted_;
  }

  void flush() {
    if (limits_.nodes && unflushed_) limits_.nodes->fetch_add(unflushed_, std::memory_order_relaxed);
    unflushed_ = 0;
  }

  Limits limits_;
  Order order_;
  bool mirror_;
  std::uint64_t nodes_ = 0;
  std::uint64_t unflushed_ = 0;
  std::size_t max_depth_ = 0;
  bool aborted_ = false;
};

/// A fixed sequence of (position, color) decisions identifying a subtree.
using Prefix = std::vector<std::pair<std::size_t, unsigned>>;

/// Subtrees whose disjoint union is the whole most-constrained search
/// tree, expanded breadth-first until at least `target` exist. Complete
/// colorings met during expansion go to `complete` instead.
template <class B>
std::vector<Prefix> split_subtrees(B& board, std::size_t target, bool mirror,
                                   std::vector<std::vector<std::uint8_t>>& complete, std::uint64_t& nodes) {
  constexpr std::size_t kMaxSplitDepth = 24;
  std::vector<Prefix> frontier{Prefix{}};

  for (std::size_t depth = 0; depth < kMaxSplitDepth && !frontier.empty() && frontier.size() < target; ++depth) {
    std::vector<Prefix> next;
    for (const Prefix& prefix : frontier) {
      const std::size_t root = board.mark();
      bool ok = true;
      for (auto [p, c] : prefix) ok = ok && board.assign(p, c);
      ok = ok && (!mirror || mirror_leader(board));
      const auto pos = ok ? board.pick_branch() : std::nullopt;
      if (ok && !pos) complete.push_back(board.snapshot());
      if (ok && pos) {
        ++nodes;
        const unsigned limit = candidate_limit(board);
        const std::uint32_t dom = board.domain(*pos);
        for (unsigned c = 0; c < limit; ++c) {
          if (!(dom >> c & 1u)) continue;
          const std::size_t m = board.mark();
          if (board.assign(*pos, c)) {
            Prefix child = prefix;
            child.emplace_back(*pos, c);
            next.push_back(std::move(child));
          }
          board.undo(m);
        }
      }
      board.undo(root);
    }
    frontier = std::move(next);
  }
  return frontier;
}

}  // namespace vdw::search::detail
