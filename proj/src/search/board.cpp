#include "board.hpp"

#include <stdexcept>

namespace vdw::search::detail {

namespace {
constexpr unsigned kMaxProgression = 64;
}

Board::Board(unsigned r, unsigned k, std::size_t n)
    : r_(r), k_(k), n_(n), pad_(n + 1), max_step_(n > 1 ? (n - 1) / (k - 1) : 0), unassigned_(n) {
  if (r < 1 || r > kMaxColors) throw std::invalid_argument("board: color count out of range");
  if (k < 2 || k > kMaxProgression) throw std::invalid_argument("board: progression length out of range");
  const std::size_t size = 2 * pad_ + n + 1;
  color_.assign(size, kOutside);
  domain_.assign(size, 0);
  const std::uint32_t full = r == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << r) - 1;
  for (std::size_t p = 1; p <= n; ++p) {
    color_[pad_ + p] = kUnassigned;
    domain_[pad_ + p] = full;
  }
  color_count_.assign(r, 0);
  words_ = (n + 64) / 64;
  members_.assign(std::size_t{r} * words_, 0);
  trail_.reserve(4 * n + 16);
  queue_.reserve(n + 1);
}

bool Board::set_color(std::size_t index, unsigned c) {
  trail_.push_back({static_cast<std::uint32_t>(index), domain_[index], true});
  color_[index] = static_cast<std::int8_t>(c);
  domain_[index] = std::uint32_t{1} << c;
  ++color_count_[c];
  const std::size_t pos = index - pad_;
  members_[c * words_ + pos / 64] |= std::uint64_t{1} << (pos % 64);
  --unassigned_;
  queue_.push_back(static_cast<std::uint32_t>(index));
  return true;
}

bool Board::remove_color(std::size_t index, unsigned c) {
  const std::uint32_t bit = std::uint32_t{1} << c;
  std::uint32_t dom = domain_[index];
  if (!(dom & bit)) return true;
  trail_.push_back({static_cast<std::uint32_t>(index), dom, false});
  dom &= ~bit;
  domain_[index] = dom;
  if (dom == 0) return false;
  if ((dom & (dom - 1)) == 0 && color_[index] == kUnassigned) {
    return set_color(index, static_cast<unsigned>(__builtin_ctz(dom)));
  }
  return true;
}

bool Board::assign(std::size_t pos, unsigned c) {
  const std::size_t index = pad_ + pos;
  if (color_[index] != kUnassigned) return color_[index] == static_cast<int>(c);
  if (!(domain_[index] >> c & 1u)) return false;
  queue_.clear();
  set_color(index, c);
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const bool ok = k_ == 3 ? propagate_three(queue_[head]) : propagate_from(queue_[head]);
    if (!ok) return false;
  }
  return true;
}

bool Board::propagate_from(std::size_t x) {
  const int c = color_[x];
  const std::uint32_t bit = std::uint32_t{1} << c;
  const unsigned span = k_ - 1;

  // count_*[j]: open members among the first j on that side;
  // first_open_*: offset of the nearest open member.
  unsigned count_left[kMaxProgression];
  unsigned count_right[kMaxProgression];

  for (std::size_t d = 1; d <= max_step_; ++d) {
    unsigned left = 0, first_open_left = 0;
    count_left[0] = 0;
    for (std::size_t j = 1, idx = x - d; j <= span; ++j, idx -= d) {
      const int col = color_[idx];
      unsigned open = 0;
      if (col == c) {
        open = 0;
      } else if (col == kUnassigned && (domain_[idx] & bit)) {
        open = 1;
        if (!first_open_left) first_open_left = static_cast<unsigned>(j);
      } else {
        break;
      }
      count_left[j] = count_left[j - 1] + open;
      left = static_cast<unsigned>(j);
    }

    unsigned right = 0, first_open_right = 0;
    count_right[0] = 0;
    for (std::size_t j = 1, idx = x + d; j <= span; ++j, idx += d) {
      const int col = color_[idx];
      unsigned open = 0;
      if (col == c) {
        open = 0;
      } else if (col == kUnassigned && (domain_[idx] & bit)) {
        open = 1;
        if (!first_open_right) first_open_right = static_cast<unsigned>(j);
      } else {
        break;
      }
      count_right[j] = count_right[j - 1] + open;
      right = static_cast<unsigned>(j);
    }
    if (left + right < span) continue;

    // Window: t members on the left, span - t on the right.
    const unsigned t_lo = span > right ? span - right : 0;
    const unsigned t_hi = left < span ? left : span;
    for (unsigned t = t_lo; t <= t_hi; ++t) {
      const unsigned open_left = count_left[t];
      const unsigned open_right = count_right[span - t];
      const unsigned open = open_left + open_right;
      if (open == 0) return false;
      if (open == 1) {
        const std::size_t target = open_left ? x - first_open_left * d : x + first_open_right * d;
        if (!remove_color(target, static_cast<unsigned>(c))) return false;
      }
    }
  }
  return true;
}

bool Board::propagate_three(std::size_t x) {
  const auto c = static_cast<unsigned>(color_[x]);
  const auto px = static_cast<long long>(x - pad_);
  const auto n = static_cast<long long>(n_);
  const std::uint64_t* class_bits = &members_[c * words_];

  // A third point that already has color c closes a monochromatic
  // progression; an open one loses c.
  auto settle = [&](long long z) {
    const std::size_t index = pad_ + static_cast<std::size_t>(z);
    const int col = color_[index];
    if (col == static_cast<int>(c)) return false;
    if (col == kUnassigned) return remove_color(index, c);
    return true;
  };

  for (std::size_t w = 0; w < words_; ++w) {
    for (std::uint64_t bits = class_bits[w]; bits; bits &= bits - 1) {
      const auto y = static_cast<long long>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)));
      if (y == px) continue;
      const long long beyond_y = 2 * y - px;
      const long long beyond_x = 2 * px - y;
      if (beyond_y >= 1 && beyond_y <= n && !settle(beyond_y)) return false;
      if (beyond_x >= 1 && beyond_x <= n && !settle(beyond_x)) return false;
      if (((px + y) & 1) == 0 && !settle((px + y) / 2)) return false;
    }
  }
  return true;
}

void Board::undo(std::size_t mark) {
  while (trail_.size() > mark) {
    const TrailEntry e = trail_.back();
    trail_.pop_back();
    if (e.assignment) {
      const auto c = static_cast<unsigned>(color_[e.index]);
      --color_count_[c];
      const std::size_t pos = e.index - pad_;
      members_[c * words_ + pos / 64] &= ~(std::uint64_t{1} << (pos % 64));
      color_[e.index] = kUnassigned;
      ++unassigned_;
    }
    domain_[e.index] = e.old_domain;
  }
}

unsigned Board::colors_in_use() const {
  unsigned used = 0;
  while (used < r_ && color_count_[used] > 0) ++used;
  return used;
}

std::optional<std::size_t> Board::pick_branch() const {
  if (unassigned_ == 0) return std::nullopt;
  const unsigned used = colors_in_use();
  const std::uint32_t used_mask = used >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << used) - 1;

  std::optional<std::size_t> best;
  unsigned best_size = ~0u;
  std::size_t best_dist = ~std::size_t{0};
  for (std::size_t p = 1; p <= n_; ++p) {
    const std::size_t index = pad_ + p;
    if (color_[index] != kUnassigned) continue;
    const std::uint32_t dom = domain_[index];
    // Unused colors are interchangeable and count as one choice.
    const unsigned size =
        static_cast<unsigned>(__builtin_popcount(dom & used_mask)) + ((dom & ~used_mask) ? 1u : 0u);
    const std::size_t dist = 2 * p > n_ + 1 ? 2 * p - (n_ + 1) : (n_ + 1) - 2 * p;
    if (size < best_size || (size == best_size && dist < best_dist)) {
      best = p;
      best_size = size;
      best_dist = dist;
    }
  }
  return best;
}

std::optional<std::size_t> Board::first_unassigned() const {
  for (std::size_t p = 1; p <= n_; ++p) {
    if (color_[pad_ + p] == kUnassigned) return p;
  }
  return std::nullopt;
}

std::vector<std::uint8_t> Board::snapshot() const {
  std::vector<std::uint8_t> out(n_);
  for (std::size_t p = 1; p <= n_; ++p) {
    const int col = color_[pad_ + p];
    out[p - 1] = col < 0 ? std::uint8_t{255} : static_cast<std::uint8_t>(col);
  }
  return out;
}

}  // namespace vdw::search::detail
