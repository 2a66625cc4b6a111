#pragma once

#include <compare>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace vdw {

using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction kept in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(BigInt n) : num_(std::move(n)) {}  // NOLINT
  Rational(long long n) : num_(n) {}  // NOLINT
  Rational(BigInt n, BigInt d);

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  /// Integer exponent; negative powers invert (throws on 0^-n).
  Rational pow(long long exp) const;

  /// "n/d", or "n" when d == 1.
  std::string str() const;
  /// Rounded half away from zero to `places` decimals.
  std::string decimal(unsigned places) const;
  double to_double() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  BigInt num_ = 0;
  BigInt den_ = 1;
};

}  // namespace vdw
