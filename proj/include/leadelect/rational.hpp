#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace leadelect {

// Exact rational number. Canonical after every operation: denominator > 0,
// gcd(|numerator|, denominator) == 1. All analysis paths stay on this type;
// doubles appear only in sampling estimates and display.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long long value) : v_(static_cast<long>(value)) {}  // NOLINT: implicit by design
  Rational(long long num, long long den);
  Rational(const mpz_class& num, const mpz_class& den);

  // Parses "num/den" or a bare integer "num". Throws std::invalid_argument.
  static Rational from_string(std::string_view text);
  // 2^exponent; exponent may be negative.
  static Rational pow2(long exponent);

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  // Always "num/den", even for integers ("3" serializes as "3/1").
  std::string str() const;
  double to_double() const { return v_.get_d(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) == 0;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) < 0;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) <= 0;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

private:
  explicit Rational(mpq_class v) : v_(std::move(v)) {}

  mpq_class v_;
};

Rational abs(const Rational& r);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace leadelect
