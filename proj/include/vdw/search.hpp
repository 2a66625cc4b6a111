#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "vdw/ap_check.hpp"
#include "vdw/certificate.hpp"
#include "vdw/checked.hpp"

namespace vdw::search {

enum class Status { exact, lower_bound_only, budget_exhausted };
enum class Mode { canonical, parallel };

std::string_view to_string(Status s);
std::string_view to_string(Mode m);

/// Limits for compute_vdw; whichever is hit first ends the search.
/// `max_length` stops once a certificate of that length exists.
struct Budget {
  std::optional<double> max_seconds;
  std::optional<std::uint64_t> max_nodes;
  std::optional<std::size_t> max_length;
};

struct SearchStats {
  std::uint64_t nodes = 0;        // branching decisions
  double elapsed_seconds = 0.0;
  std::size_t max_depth = 0;      // deepest decision stack
};

/// Called each time the best certificate length grows.
using ProgressFn = std::function<void(std::size_t best_length, std::uint64_t nodes)>;

struct SearchOptions {
  Budget budget;
  Mode mode = Mode::canonical;
  unsigned threads = 0;  // parallel mode; 0 = OpenMP default
  ProgressFn on_progress;
};

/// exact: value = W(r, k), certificate has length W - 1, and no coloring
/// of length W exists.
/// lower_bound_only / budget_exhausted: value = certificate length + 1, a
/// lower bound on W(r, k).
struct SearchOutcome {
  Status status = Status::budget_exhausted;
  u64 value = 0;
  Certificate certificate;
  SearchStats stats;
};

/// Finds W(r, k) by exhaustive search with lookahead propagation.
///
/// Canonical mode is single-threaded and fully deterministic, and its
/// certificate is the lexicographically first coloring of length W - 1.
/// Parallel mode splits each exhaustive pass into prefix subtrees run
/// under OpenMP; status and value match canonical mode, the certificate
/// may differ.
SearchOutcome compute_vdw(unsigned r, unsigned k, const SearchOptions& options = {});

/// Lexicographically first coloring of 1..length free of monochromatic
/// k-term progressions, or nullopt if none exists. Single-threaded.
std::optional<Coloring> lex_first_coloring(unsigned r, unsigned k, std::size_t length);

}  // namespace vdw::search
