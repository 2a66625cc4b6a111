#pragma once

#include <string_view>
#include <vector>

#include "vdw/checked.hpp"
#include "vdw/rational.hpp"
#include "vdw/registry.hpp"

namespace vdw::ratio {

enum class Sign { plus, minus };

/// k = r + alpha (k > r) or k = r - alpha (k <= r, alpha < r).
struct AlphaDecomposition {
  unsigned alpha = 0;
  Sign sign = Sign::minus;
  friend bool operator==(const AlphaDecomposition&, const AlphaDecomposition&) = default;
};

std::string_view to_string(Sign s);

AlphaDecomposition alpha_decompose(unsigned r, unsigned k);

/// Exact and leading-order forms of W(r, k+1) / W(r, k).
///
/// m_lo and m_hi are the radix-k and radix-(k+1) exponents of W(r,k) and
/// W(r,k+1); c_lead_* their leading digits. The residual is the factor
/// the leading-order estimate misses, measured exactly.
struct RatioAnalysis {
  unsigned r = 0;
  unsigned k = 0;
  u64 w_lo = 0;  // W(r, k)
  u64 w_hi = 0;  // W(r, k+1)
  Rational exact;
  unsigned m_lo = 0;
  unsigned m_hi = 0;
  long long gap = 0;
  u64 c_lead_lo = 0;
  u64 c_lead_hi = 0;
  AlphaDecomposition alpha;
  Rational leading_estimate;
  Rational r_form_estimate;
  Rational residual;
};

/// W(r, k+1) / W(r, k) in lowest terms. Throws MissingRecord.
Rational exact_ratio(const Registry& registry, unsigned r, unsigned k);

/// Fills every field; throws std::logic_error if the k-form and the
/// r(1 +- alpha/r)-form of the estimate ever differ.
RatioAnalysis analyze(const Registry& registry, unsigned r, unsigned k);

/// k^gap (1 + 1/k)^m_hi times the quotient of the two digit tails
/// sum_i c_i / base^i, evaluated exactly. Algebraically equal to the
/// exact ratio.
Rational exact_identity_rhs(const Registry& registry, unsigned r, unsigned k);

/// r^gap sum_j (+-1)^j C(gap, j) (alpha/r)^j c_hi/c_lo. Requires gap >= 1
/// (std::invalid_argument otherwise); throws std::logic_error if it
/// disagrees with the leading estimate.
Rational binomial_expansion_estimate(const Registry& registry, unsigned r, unsigned k);

struct GapEntry {
  unsigned r = 0;
  unsigned k = 0;
  u64 w_lo = 0;
  u64 w_hi = 0;
  unsigned m_lo = 0;
  unsigned m_hi = 0;
  long long gap = 0;
  bool in_expected_range = false;  // gap in {0, 1}
};

/// One entry per registry pair (r, k), (r, k+1) with both present.
std::vector<GapEntry> gap_survey(const Registry& registry);

}  // namespace vdw::ratio
