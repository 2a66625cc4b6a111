#include "board3.hpp"

#include <cstddef>
#include <cstring>
#include <stdexcept>

namespace vdw::search::detail {

namespace {
using Bits = unsigned __int128;

inline Bits bit(std::size_t p) { return Bits{1} << p; }
inline bool has(Bits b, std::size_t p) { return (b >> p) & 1u; }

inline unsigned lowest(Bits v) {
  const auto lo = static_cast<std::uint64_t>(v);
  return lo ? static_cast<unsigned>(__builtin_ctzll(lo))
            : 64u + static_cast<unsigned>(__builtin_ctzll(static_cast<std::uint64_t>(v >> 64)));
}

inline unsigned highest(Bits v) {
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  return hi ? 127u - static_cast<unsigned>(__builtin_clzll(hi))
            : 63u - static_cast<unsigned>(__builtin_clzll(static_cast<std::uint64_t>(v)));
}
}  // namespace

SmallBoard3::SmallBoard3(unsigned r, unsigned k, std::size_t n)
    : r_(r), n_(n), range_(0), bytes_(offsetof(State, color) + r * sizeof(ColorState)) {
  if (!supports(r, k, n) || r < 1) throw std::invalid_argument("small board: unsupported size");
  stack_.resize(n + 8);
  State& s = live();
  std::memset(static_cast<void*>(&s), 0, sizeof s);
  for (std::size_t p = 1; p <= n; ++p) range_ |= bit(p);
  s.open = range_;
  s.unassigned = static_cast<std::uint32_t>(n);
  for (unsigned c = 0; c < r; ++c) s.color[c].allowed = range_;
  queue_.reserve(n + 1);
}

int SmallBoard3::color(std::size_t pos) const {
  const auto& s = live();
  if (has(s.open, pos)) return -1;
  for (unsigned c = 0; c < r_; ++c) {
    if (has(s.color[c].members, pos)) return static_cast<int>(c);
  }
  return -1;
}

std::uint32_t SmallBoard3::domain(std::size_t pos) const {
  const auto& s = live();
  std::uint32_t d = 0;
  for (unsigned c = 0; c < r_; ++c) d |= static_cast<std::uint32_t>(has(s.color[c].allowed, pos)) << c;
  return d;
}

std::size_t SmallBoard3::mark() {
  if (depth_ + 1 == stack_.size()) stack_.resize(2 * stack_.size());
  std::memcpy(static_cast<void*>(&stack_[depth_ + 1]), &stack_[depth_], bytes_);
  return depth_++;
}

void SmallBoard3::undo(std::size_t mark) { depth_ = mark; }

bool SmallBoard3::set_color(std::size_t x, unsigned c) {
  State& s = live();
  ColorState& cs = s.color[c];
  s.open &= ~bit(x);
  --s.unassigned;
  ++s.count[c];
  cs.members |= bit(x);
  cs.mirrored |= bit(127 - x);
  cs.halves[x & 1] |= bit(x >> 1);
  if (2 * x < 128) {
    cs.doubled_lo |= bit(2 * x);
  } else {
    cs.doubled_hi |= bit(2 * x - 128);
  }
  for (unsigned e = 0; e < r_; ++e) {
    if (e != c) s.color[e].allowed &= ~bit(x);
  }

  // Third points of every progression {x, y, z} with y in the class.
  Bits third = x == 0 ? cs.doubled_lo : (cs.doubled_lo >> x) | (cs.doubled_hi << (128 - x));
  const long shift = static_cast<long>(2 * x) - 127;
  third |= shift >= 0 ? cs.mirrored << shift : cs.mirrored >> -shift;
  const std::size_t parity = x & 1;
  third |= cs.halves[parity] << ((x + parity) / 2);
  third &= range_ & ~bit(x);

  if (third & cs.members) return false;
  third &= cs.allowed & s.open;
  if (!third) return true;
  cs.allowed &= ~third;

  Bits any = 0, several = 0;
  for (unsigned e = 0; e < r_; ++e) {
    several |= any & s.color[e].allowed;
    any |= s.color[e].allowed;
  }
  if (third & ~any) return false;
  for (Bits forced = third & ~several; forced; forced &= forced - 1) {
    queue_.push_back(static_cast<std::uint8_t>(lowest(forced)));
  }
  return true;
}

bool SmallBoard3::assign(std::size_t pos, unsigned c) {
  State& s = live();
  if (!has(s.open, pos)) return has(s.color[c].members, pos);
  if (!has(s.color[c].allowed, pos)) return false;
  queue_.clear();
  if (!set_color(pos, c)) return false;
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const std::size_t z = queue_[head];
    if (!has(s.open, z)) continue;  // forced twice, already placed
    const std::uint32_t dom = domain(z);
    if (dom == 0) return false;
    if (!set_color(z, static_cast<unsigned>(__builtin_ctz(dom)))) return false;
  }
  return true;
}

unsigned SmallBoard3::colors_in_use() const {
  const auto& s = live();
  unsigned used = 0;
  while (used < r_ && s.count[used] > 0) ++used;
  return used;
}

std::optional<std::size_t> SmallBoard3::pick_branch() const {
  const auto& s = live();
  if (s.unassigned == 0) return std::nullopt;
  const unsigned used = colors_in_use();

  // Bit-sliced domain sizes; unused colors count once together.
  Bits plane[4] = {0, 0, 0, 0};
  auto add = [&plane](Bits v) {
    for (unsigned j = 0; j < 4 && v; ++j) {
      const Bits carry = plane[j] & v;
      plane[j] ^= v;
      v = carry;
    }
  };
  Bits fresh = 0;
  for (unsigned c = 0; c < used; ++c) add(s.color[c].allowed);
  for (unsigned c = used; c < r_; ++c) fresh |= s.color[c].allowed;
  add(fresh);

  Bits best = s.open;
  for (unsigned j = 4; j-- > 0;) {
    const Bits smaller = best & ~plane[j];
    if (smaller) best = smaller;
  }

  // Nearest the middle, lower one on ties.
  const std::size_t half = (n_ + 1) / 2;
  const Bits lower = best & (bit(half + 1) - 1);
  const Bits upper = best & ~(bit(half + 1) - 1);
  std::optional<std::size_t> pick;
  std::size_t dist = ~std::size_t{0};
  if (lower) {
    pick = highest(lower);
    dist = n_ + 1 - 2 * *pick;
  }
  if (upper) {
    const std::size_t p = lowest(upper);
    if (2 * p - (n_ + 1) < dist) pick = p;
  }
  return pick;
}

std::optional<std::size_t> SmallBoard3::first_unassigned() const {
  const auto& s = live();
  if (!s.open) return std::nullopt;
  return lowest(s.open);
}

std::vector<std::uint8_t> SmallBoard3::snapshot() const {
  std::vector<std::uint8_t> out(n_);
  for (std::size_t p = 1; p <= n_; ++p) {
    const int col = color(p);
    out[p - 1] = col < 0 ? std::uint8_t{255} : static_cast<std::uint8_t>(col);
  }
  return out;
}

}  // namespace vdw::search::detail
