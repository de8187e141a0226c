#include "mathrepro/cas/integer.hpp"

#include <ostream>

#include "mathrepro/error.hpp"

namespace mathrepro::cas {

namespace {

bool valid_decimal(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Integer::Integer(const std::string& decimal) {
  if (!valid_decimal(decimal)) {
    throw Error(ErrorKind::InvalidInput,
                "not a decimal integer: '" + decimal + "'");
  }
  v_ = mpz_class(decimal, 10);
}

Integer Integer::operator-() const {
  Integer r;
  r.v_ = -v_;
  return r;
}

Integer Integer::operator+(const Integer& rhs) const {
  Integer r;
  r.v_ = v_ + rhs.v_;
  return r;
}

Integer Integer::operator-(const Integer& rhs) const {
  Integer r;
  r.v_ = v_ - rhs.v_;
  return r;
}

Integer Integer::operator*(const Integer& rhs) const {
  Integer r;
  r.v_ = v_ * rhs.v_;
  return r;
}

Integer Integer::operator/(const Integer& rhs) const {
  return divmod(rhs).first;
}

Integer Integer::operator%(const Integer& rhs) const {
  return divmod(rhs).second;
}

Integer& Integer::operator+=(const Integer& rhs) {
  v_ += rhs.v_;
  return *this;
}

Integer& Integer::operator-=(const Integer& rhs) {
  v_ -= rhs.v_;
  return *this;
}

Integer& Integer::operator*=(const Integer& rhs) {
  v_ *= rhs.v_;
  return *this;
}

std::pair<Integer, Integer> Integer::divmod(const Integer& divisor) const {
  if (divisor.is_zero()) {
    throw Error(ErrorKind::DivisionByZero, "division by zero");
  }
  Integer q, r;
  mpz_tdiv_qr(q.v_.get_mpz_t(), r.v_.get_mpz_t(), v_.get_mpz_t(),
              divisor.v_.get_mpz_t());
  return {q, r};
}

Integer Integer::mod_reduce(const Integer& modulus) const {
  if (modulus.sign() <= 0) {
    throw Error(ErrorKind::InvalidInput, "modulus must be positive");
  }
  Integer r;
  mpz_mod(r.v_.get_mpz_t(), v_.get_mpz_t(), modulus.v_.get_mpz_t());
  return r;
}

Integer Integer::abs() const {
  Integer r;
  r.v_ = ::abs(v_);
  return r;
}

Integer Integer::pow(unsigned long exponent) const {
  Integer r;
  mpz_pow_ui(r.v_.get_mpz_t(), v_.get_mpz_t(), exponent);
  return r;
}

Integer Integer::gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.v_.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
  return r;
}

Integer Integer::lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.v_.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
  return r;
}

Integer Integer::invert_mod(const Integer& modulus) const {
  Integer r;
  if (mpz_invert(r.v_.get_mpz_t(), v_.get_mpz_t(), modulus.v_.get_mpz_t()) ==
      0) {
    throw Error(ErrorKind::DivisionByZero,
                "element has no inverse modulo " + modulus.to_string());
  }
  return r;
}

unsigned long Integer::to_ulong() const {
  if (!fits_ulong()) {
    throw Error(ErrorKind::InvalidInput,
                "integer too large for machine word: " + to_string());
  }
  return v_.get_ui();
}

long Integer::to_long() const {
  if (!fits_long()) {
    throw Error(ErrorKind::InvalidInput,
                "integer too large for machine word: " + to_string());
  }
  return v_.get_si();
}

std::ostream& operator<<(std::ostream& os, const Integer& n) {
  return os << n.to_string();
}

}  // namespace mathrepro::cas
