#include "leadelect/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace leadelect {

namespace {

mpq_class make_canonical(const mpz_class& num, const mpz_class& den) {
  if (den == 0) {
    throw std::invalid_argument("Rational: zero denominator");
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

Rational::Rational(long long num, long long den)
    : v_(make_canonical(mpz_class(static_cast<long>(num)),
                        mpz_class(static_cast<long>(den)))) {}

Rational::Rational(const mpz_class& num, const mpz_class& den)
    : v_(make_canonical(num, den)) {}

Rational Rational::from_string(std::string_view text) {
  const auto slash = text.find('/');
  const std::string num_part(text.substr(0, slash));
  mpz_class num, den(1);
  if (mpz_set_str(num.get_mpz_t(), num_part.c_str(), 10) != 0) {
    throw std::invalid_argument("Rational: cannot parse numerator in '" +
                                std::string(text) + "'");
  }
  if (slash != std::string_view::npos) {
    const std::string den_part(text.substr(slash + 1));
    if (mpz_set_str(den.get_mpz_t(), den_part.c_str(), 10) != 0 || den == 0) {
      throw std::invalid_argument("Rational: cannot parse denominator in '" +
                                  std::string(text) + "'");
    }
  }
  return Rational(num, den);
}

Rational Rational::pow2(long exponent) {
  mpz_class p(1);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(),
               static_cast<mp_bitcnt_t>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? Rational(mpz_class(1), p) : Rational(p, mpz_class(1));
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::operator-() const { return Rational(mpq_class(-v_)); }

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) {
    throw std::invalid_argument("Rational: division by zero");
  }
  v_ /= o.v_;
  return *this;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }

Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace leadelect
