#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace vdw::search {

/// An r-coloring of 1..N; colors[i] is the color of integer i + 1.
struct Coloring {
  unsigned r = 2;
  std::vector<std::uint8_t> colors;

  std::size_t length() const { return colors.size(); }
  friend bool operator==(const Coloring&, const Coloring&) = default;
};

/// a, a+d, ..., a+(k-1)d (1-based integers).
struct Progression {
  std::size_t start = 0;
  std::size_t step = 0;
  std::uint8_t color = 0;
};

/// Trusted reference: full scan over every (a, d). Serial and simple on
/// purpose; the search kernels are tested against it.
bool ap_free(const Coloring& coloring, unsigned k);

/// First monochromatic k-term progression in (start, step) order.
std::optional<Progression> find_monochromatic_ap(std::span<const std::uint8_t> colors, unsigned k);

/// OpenMP version of ap_free, parallel over the common difference.
/// Agrees with ap_free on every input.
bool ap_free_parallel(const Coloring& coloring, unsigned k);

/// True iff no monochromatic k-term progression ends at position i
/// (1-based); only positions 1..i are read. Checking this after every
/// assignment of a growing prefix is equivalent to ap_free on the prefix.
bool last_position_check(std::span<const std::uint8_t> colors, unsigned k, std::size_t i);

}  // namespace vdw::search
