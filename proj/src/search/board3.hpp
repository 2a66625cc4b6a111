#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace vdw::search::detail {

/// Board specialised to 3-term progressions on 1..n with n <= 127 and at
/// most 8 colors. Same contract as Board.
///
/// Every color class is a 128-bit set, kept alongside three derived
/// images (doubled, mirrored, halved by parity). For a new member x the
/// third points 2y-x, 2x-y and (x+y)/2 over the whole class are then a
/// few shifts, so propagation does not walk the class.
///
/// States form a stack whose top is the live one: mark() pushes a copy,
/// undo(m) pops back to it.
class SmallBoard3 {
 public:
  static constexpr unsigned kMaxColors = 8;
  static constexpr std::size_t kMaxLength = 127;

  static bool supports(unsigned r, unsigned k, std::size_t n) { return k == 3 && r <= kMaxColors && n <= kMaxLength; }

  SmallBoard3(unsigned r, unsigned k, std::size_t n);

  unsigned colors() const { return r_; }
  std::size_t length() const { return n_; }
  bool complete() const { return live().unassigned == 0; }

  int color(std::size_t pos) const;
  std::uint32_t domain(std::size_t pos) const;

  bool assign(std::size_t pos, unsigned c);

  std::size_t mark();
  void undo(std::size_t mark);

  unsigned colors_in_use() const;
  std::optional<std::size_t> pick_branch() const;
  std::optional<std::size_t> first_unassigned() const;
  std::vector<std::uint8_t> snapshot() const;

 private:
  using Bits = unsigned __int128;

  struct ColorState {
    Bits allowed;   // open positions that may still take this color, plus members
    Bits members;
    Bits mirrored;  // bit 127 - y
    Bits halves[2]; // by parity p: bit (y - p) / 2
    Bits doubled_lo;
    Bits doubled_hi;  // bit 2y, split at 128
  };

  struct State {
    Bits open;
    std::uint32_t unassigned;
    std::uint32_t count[kMaxColors];
    ColorState color[kMaxColors];
  };

  bool set_color(std::size_t x, unsigned c);
  State& live() { return stack_[depth_]; }
  const State& live() const { return stack_[depth_]; }

  unsigned r_;
  std::size_t n_;
  Bits range_;
  std::size_t bytes_;  // live part of a State for r colors
  std::vector<State> stack_;
  std::size_t depth_ = 0;
  std::vector<std::uint8_t> queue_;
};

}  // namespace vdw::search::detail
