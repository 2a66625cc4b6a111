#include "vdw/rational.hpp"

#include <stdexcept>

namespace vdw {

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_ == 0) throw std::domain_error("rational: zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = boost::multiprecision::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::pow(long long exp) const {
  if (exp < 0) {
    if (num_ == 0) throw std::domain_error("rational: zero to a negative power");
    return Rational(den_, num_).pow(-exp);
  }
  auto e = static_cast<unsigned>(exp);
  return Rational(boost::multiprecision::pow(num_, e), boost::multiprecision::pow(den_, e));
}

std::string Rational::str() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

std::string Rational::decimal(unsigned places) const {
  BigInt scale = boost::multiprecision::pow(BigInt(10), places);
  BigInt mag = boost::multiprecision::abs(num_) * scale;
  BigInt q = (2 * mag + den_) / (2 * den_);
  std::string digits = q.str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = (num_ < 0 && q != 0) ? "-" : "";
  if (places == 0) return out + digits;
  return out + digits.substr(0, digits.size() - places) + "." + digits.substr(digits.size() - places);
}

double Rational::to_double() const {
  return std::stod(decimal(17));
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational: division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace vdw
