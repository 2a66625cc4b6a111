#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace vdw::search::detail {

/// Partial r-coloring of 1..n with per-position color domains.
///
/// Every assignment runs lookahead propagation over all k-term
/// progressions inside 1..n through the assigned position: a progression
/// with k-1 members of color c and one open member removes c from that
/// member's domain, and a singleton domain becomes an assignment. A
/// complete board that never reported a conflict is progression-free.
///
/// Changes are trailed; mark()/undo() restore earlier states.
class Board {
 public:
  static constexpr unsigned kMaxColors = 32;

  Board(unsigned r, unsigned k, std::size_t n);

  unsigned colors() const { return r_; }
  unsigned progression_length() const { return k_; }
  std::size_t length() const { return n_; }
  std::size_t unassigned() const { return unassigned_; }
  bool complete() const { return unassigned_ == 0; }

  /// -1 when unassigned. Positions are 1-based.
  int color(std::size_t pos) const { return color_[pad_ + pos]; }
  std::uint32_t domain(std::size_t pos) const { return domain_[pad_ + pos]; }

  /// Assigns and propagates. On false the board is inconsistent until
  /// undo() to a mark taken before the call.
  bool assign(std::size_t pos, unsigned c);

  std::size_t mark() const { return trail_.size(); }
  void undo(std::size_t mark);

  /// Number of distinct colors in use. Used colors always form the
  /// prefix 0..used-1, so colors above `used` are interchangeable.
  unsigned colors_in_use() const;

  /// Unassigned position with the smallest domain; ties go to the
  /// position nearest the middle, then the lower one.
  std::optional<std::size_t> pick_branch() const;

  /// Lowest unassigned position.
  std::optional<std::size_t> first_unassigned() const;

  std::vector<std::uint8_t> snapshot() const;

 private:
  struct TrailEntry {
    std::uint32_t index;        // padded index
    std::uint32_t old_domain;
    bool assignment;
  };

  bool set_color(std::size_t index, unsigned c);
  bool remove_color(std::size_t index, unsigned c);
  bool propagate_from(std::size_t index);
  // k = 3: walks the color class of the assigned position instead of
  // every common difference.
  bool propagate_three(std::size_t index);

  static constexpr std::int8_t kUnassigned = -1;
  static constexpr std::int8_t kOutside = 127;

  unsigned r_;
  unsigned k_;
  std::size_t n_;
  std::size_t pad_;
  std::size_t max_step_;
  std::vector<std::int8_t> color_;
  std::vector<std::uint32_t> domain_;
  std::vector<std::uint32_t> color_count_;
  std::size_t words_;
  std::vector<std::uint64_t> members_;  // per color: bitset of assigned positions
  std::vector<TrailEntry> trail_;
  std::vector<std::uint32_t> queue_;
  std::size_t unassigned_;
};

}  // namespace vdw::search::detail
