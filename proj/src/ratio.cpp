#include "vdw/ratio.hpp"

#include <stdexcept>

#include "vdw/radix.hpp"

namespace vdw::ratio {

namespace {

struct Pair {
  u64 lo;
  u64 hi;
  radix::RadixRep rep_lo;  // W(r,k) in radix k
  radix::RadixRep rep_hi;  // W(r,k+1) in radix k+1
  long long gap() const { return static_cast<long long>(rep_hi.exponent) - rep_lo.exponent; }
};

Pair load(const Registry& registry, unsigned r, unsigned k) {
  if (r < 2 || k < 3) throw std::invalid_argument("ratio: requires r >= 2 and k >= 3");
  Pair p;
  p.lo = registry.require(r, k).value;
  p.hi = registry.require(r, k + 1).value;
  p.rep_lo = radix::to_radix(p.lo, k);
  p.rep_hi = radix::to_radix(p.hi, k + 1);
  return p;
}

Rational leading_digit_ratio(const Pair& p) {
  return Rational(BigInt(p.rep_hi.digits.front()), BigInt(p.rep_lo.digits.front()));
}

Rational one_plus_minus(const AlphaDecomposition& a, unsigned r) {
  Rational frac(BigInt(a.alpha), BigInt(r));
  return a.sign == Sign::plus ? Rational(1) + frac : Rational(1) - frac;
}

// sum_i digits[i] / base^i, most significant first.
Rational digit_tail(const radix::RadixRep& rep) {
  Rational sum;
  BigInt scale = 1;
  for (u64 d : rep.digits) {
    sum += Rational(BigInt(d), scale);
    scale *= rep.base;
  }
  return sum;
}

BigInt binomial(long long n, long long j) {
  BigInt out = 1;
  for (long long i = 1; i <= j; ++i) out = out * (n - j + i) / i;
  return out;
}

}  // namespace

std::string_view to_string(Sign s) { return s == Sign::plus ? "+" : "-"; }

AlphaDecomposition alpha_decompose(unsigned r, unsigned k) {
  if (r < 2 || k < 3) throw std::invalid_argument("alpha_decompose: requires r >= 2 and k >= 3");
  if (k > r) return {k - r, Sign::plus};
  return {r - k, Sign::minus};
}

Rational exact_ratio(const Registry& registry, unsigned r, unsigned k) {
  Pair p = load(registry, r, k);
  return Rational(BigInt(p.hi), BigInt(p.lo));
}

RatioAnalysis analyze(const Registry& registry, unsigned r, unsigned k) {
  Pair p = load(registry, r, k);
  RatioAnalysis a;
  a.r = r;
  a.k = k;
  a.w_lo = p.lo;
  a.w_hi = p.hi;
  a.exact = Rational(BigInt(p.hi), BigInt(p.lo));
  a.m_lo = p.rep_lo.exponent;
  a.m_hi = p.rep_hi.exponent;
  a.gap = p.gap();
  a.c_lead_lo = p.rep_lo.digits.front();
  a.c_lead_hi = p.rep_hi.digits.front();
  a.alpha = alpha_decompose(r, k);

  const Rational digits = leading_digit_ratio(p);
  a.leading_estimate = Rational(k).pow(a.gap) * digits;
  a.r_form_estimate = Rational(r).pow(a.gap) * one_plus_minus(a.alpha, r).pow(a.gap) * digits;
  if (a.leading_estimate != a.r_form_estimate) {
    throw std::logic_error("ratio: k-form and r-form estimates disagree for (" + std::to_string(r) + "," +
                           std::to_string(k) + ")");
  }
  a.residual = a.exact / a.leading_estimate;
  return a;
}

Rational exact_identity_rhs(const Registry& registry, unsigned r, unsigned k) {
  Pair p = load(registry, r, k);
  Rational growth = Rational(k).pow(p.gap()) * (Rational(1) + Rational(1, k)).pow(p.rep_hi.exponent);
  return growth * digit_tail(p.rep_hi) / digit_tail(p.rep_lo);
}

Rational binomial_expansion_estimate(const Registry& registry, unsigned r, unsigned k) {
  Pair p = load(registry, r, k);
  const long long gap = p.gap();
  if (gap < 1) {
    throw std::invalid_argument("binomial expansion requires exponent gap m_{k+1} - m_k >= 1 (got " +
                                std::to_string(gap) + ")");
  }
  const AlphaDecomposition a = alpha_decompose(r, k);
  const Rational step(BigInt(a.alpha), BigInt(r));
  Rational sum;
  for (long long j = 0; j <= gap; ++j) {
    Rational term = Rational(binomial(gap, j)) * step.pow(j);
    if (a.sign == Sign::minus && j % 2 == 1) term = -term;
    sum += term;
  }
  Rational estimate = Rational(r).pow(gap) * sum * leading_digit_ratio(p);

  Rational leading = Rational(k).pow(gap) * leading_digit_ratio(p);
  if (estimate != leading) throw std::logic_error("ratio: binomial expansion disagrees with leading estimate");
  return estimate;
}

std::vector<GapEntry> gap_survey(const Registry& registry) {
  std::vector<GapEntry> out;
  for (const auto& rec : registry.records()) {
    if (!registry.lookup(rec.r, rec.k + 1)) continue;
    Pair p = load(registry, rec.r, rec.k);
    GapEntry e;
    e.r = rec.r;
    e.k = rec.k;
    e.w_lo = p.lo;
    e.w_hi = p.hi;
    e.m_lo = p.rep_lo.exponent;
    e.m_hi = p.rep_hi.exponent;
    e.gap = p.gap();
    e.in_expected_range = e.gap == 0 || e.gap == 1;
    out.push_back(e);
  }
  return out;
}

}  // namespace vdw::ratio
