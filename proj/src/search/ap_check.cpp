#include "vdw/ap_check.hpp"

#include <atomic>

#include <omp.h>

namespace vdw::search {

namespace {

// Monochromatic progression with 0-based start index `a` and step `d`?
bool mono_at(std::span<const std::uint8_t> colors, unsigned k, std::size_t a, std::size_t d) {
  const std::uint8_t c = colors[a];
  for (unsigned j = 1; j < k; ++j) {
    if (colors[a + j * d] != c) return false;
  }
  return true;
}

}  // namespace

std::optional<Progression> find_monochromatic_ap(std::span<const std::uint8_t> colors, unsigned k) {
  const std::size_t n = colors.size();
  if (k == 0) return std::nullopt;
  if (k == 1) {
    if (n == 0) return std::nullopt;
    return Progression{1, 1, colors[0]};
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t d = 1; a + (k - 1) * d < n; ++d) {
      if (mono_at(colors, k, a, d)) return Progression{a + 1, d, colors[a]};
    }
  }
  return std::nullopt;
}

bool ap_free(const Coloring& coloring, unsigned k) {
  return !find_monochromatic_ap(coloring.colors, k).has_value();
}

bool ap_free_parallel(const Coloring& coloring, unsigned k) {
  const std::span<const std::uint8_t> colors = coloring.colors;
  const auto n = static_cast<long long>(colors.size());
  if (k < 2) return ap_free(coloring, k);
  const long long max_step = n > 1 ? (n - 1) / (k - 1) : 0;
  std::atomic<bool> found{false};

#pragma omp parallel for schedule(dynamic, 4)
  for (long long d = 1; d <= max_step; ++d) {
    if (found.load(std::memory_order_relaxed)) continue;
    const auto step = static_cast<std::size_t>(d);
    for (std::size_t a = 0; a + (k - 1) * step < colors.size(); ++a) {
      if (mono_at(colors, k, a, step)) {
        found.store(true, std::memory_order_relaxed);
        break;
      }
    }
  }
  return !found.load();
}

bool last_position_check(std::span<const std::uint8_t> colors, unsigned k, std::size_t i) {
  if (i == 0 || i > colors.size()) return true;
  if (k < 2) return k == 0;
  const std::uint8_t c = colors[i - 1];
  for (std::size_t d = 1; (k - 1) * d < i; ++d) {
    unsigned j = 1;
    while (j < k && colors[i - 1 - j * d] == c) ++j;
    if (j == k) return false;
  }
  return true;
}

}  // namespace vdw::search
