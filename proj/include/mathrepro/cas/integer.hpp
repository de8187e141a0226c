#ifndef MATHREPRO_CAS_INTEGER_HPP
#define MATHREPRO_CAS_INTEGER_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

namespace mathrepro::cas {

/// Arbitrary-precision integer with exact arithmetic. SNF intermediate
/// entries grow quickly, so there is no fixed-width fallback anywhere.
class Integer {
 public:
  Integer() : v_(0) {}
  Integer(int n) : v_(n) {}
  Integer(long n) : v_(n) {}
  Integer(long long n) : v_(static_cast<long>(n)) {}

  /// Parses an optionally signed decimal string. Throws
  /// Error(InvalidInput) on anything else.
  explicit Integer(const std::string& decimal);

  int sign() const noexcept { return mpz_sgn(v_.get_mpz_t()); }
  bool is_zero() const noexcept { return sign() == 0; }

  Integer operator-() const;
  Integer operator+(const Integer& rhs) const;
  Integer operator-(const Integer& rhs) const;
  Integer operator*(const Integer& rhs) const;

  /// Truncated division (round toward zero), like C++ integer division.
  Integer operator/(const Integer& rhs) const;
  Integer operator%(const Integer& rhs) const;

  Integer& operator+=(const Integer& rhs);
  Integer& operator-=(const Integer& rhs);
  Integer& operator*=(const Integer& rhs);

  /// Quotient/remainder of truncated division; |r| < |divisor|, sign of r
  /// follows the dividend. Throws Error(DivisionByZero).
  std::pair<Integer, Integer> divmod(const Integer& divisor) const;

  /// Least non-negative residue, regardless of the sign of *this.
  Integer mod_reduce(const Integer& modulus) const;

  Integer abs() const;
  Integer pow(unsigned long exponent) const;

  static Integer gcd(const Integer& a, const Integer& b);
  static Integer lcm(const Integer& a, const Integer& b);

  /// Inverse mod a positive modulus; throws Error(DivisionByZero) when the
  /// inverse does not exist.
  Integer invert_mod(const Integer& modulus) const;

  bool operator==(const Integer& rhs) const { return cmp(rhs) == 0; }
  std::strong_ordering operator<=>(const Integer& rhs) const {
    int c = cmp(rhs);
    return c < 0   ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }

  bool fits_ulong() const { return v_.fits_ulong_p(); }
  unsigned long to_ulong() const;
  bool fits_long() const { return v_.fits_slong_p(); }
  long to_long() const;

  std::string to_string() const { return v_.get_str(); }

  /// Number of bits in |v|; 0 for zero.
  std::size_t bit_length() const {
    return is_zero() ? 0 : mpz_sizeinbase(v_.get_mpz_t(), 2);
  }

 private:
  int cmp(const Integer& rhs) const { return ::cmp(v_, rhs.v_); }

  mpz_class v_;
};

std::ostream& operator<<(std::ostream& os, const Integer& n);

}  // namespace mathrepro::cas

#endif
