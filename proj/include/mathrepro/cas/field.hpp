#ifndef MATHREPRO_CAS_FIELD_HPP
#define MATHREPRO_CAS_FIELD_HPP

#include <memory>
#include <string>
#include <vector>

#include "mathrepro/cas/integer.hpp"

namespace mathrepro::cas {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Element of a prime or extension field. Stores the residue coefficients
/// of a polynomial in the field generator, ascending, length = degree of
/// the parent, every entry in [0, p).
///
/// Arithmetic is only defined between elements whose parents are the same
/// live Field instance; anything else throws Error(ParentMismatch), even
/// for structurally equal fields. Merging identities is the job of the
/// serializer's Session, not of the kernel.
class FieldElement {
 public:
  FieldElement(FieldPtr parent, std::vector<Integer> coeffs);

  const FieldPtr& parent() const { return parent_; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;

  FieldElement operator-() const;
  FieldElement operator+(const FieldElement& rhs) const;
  FieldElement operator-(const FieldElement& rhs) const;
  FieldElement operator*(const FieldElement& rhs) const;
  FieldElement operator/(const FieldElement& rhs) const;

  /// Non-negative exponent.
  FieldElement pow(const Integer& exponent) const;
  FieldElement inverse() const;

  /// Structural equality (parents compared by structure, not identity).
  bool operator==(const FieldElement& rhs) const;

 private:
  const Field& same_parent_or_throw(const FieldElement& rhs) const;

  FieldPtr parent_;
  std::vector<Integer> coeffs_;
};

/// Common interface of PrimeField and FiniteField. Immutable after
/// construction; identity (the shared_ptr) is what arithmetic checks.
class Field : public std::enable_shared_from_this<Field> {
 public:
  virtual ~Field() = default;

  virtual const Integer& characteristic() const = 0;
  virtual int degree() const = 0;

  /// Ascending coefficients of the monic defining polynomial, length
  /// degree+1. Empty for prime fields (no extension structure).
  virtual const std::vector<Integer>& defining_polynomial() const = 0;

  Integer order() const;
  bool is_prime_field() const { return degree() == 1; }

  FieldElement zero() const;
  FieldElement one() const;
  /// The residue class of x (printed `o`); one() in a prime field.
  FieldElement generator() const;
  FieldElement from_integer(const Integer& n) const;
  /// Builds an element from ascending coefficients (length must equal the
  /// degree); entries are reduced mod p.
  FieldElement element(std::vector<Integer> coeffs) const;

  bool same_structure(const Field& other) const;
};

class PrimeField final : public Field {
 public:
  const Integer& characteristic() const override { return p_; }
  int degree() const override { return 1; }
  const std::vector<Integer>& defining_polynomial() const override;

 private:
  friend FieldPtr make_prime_field(const Integer& p);
  explicit PrimeField(Integer p) : p_(std::move(p)) {}

  Integer p_;
};

class FiniteField final : public Field {
 public:
  const Integer& characteristic() const override { return p_; }
  int degree() const override { return n_; }
  const std::vector<Integer>& defining_polynomial() const override {
    return defining_;
  }

 private:
  friend FieldPtr make_finite_field(const Integer& p, int n);
  FiniteField(Integer p, int n, std::vector<Integer> defining)
      : p_(std::move(p)), n_(n), defining_(std::move(defining)) {}

  Integer p_;
  int n_;
  std::vector<Integer> defining_;
};

/// Field of order p; p is checked prime by trial division (desk scale).
FieldPtr make_prime_field(const Integer& p);

/// Field of order p^n. The defining polynomial is the lexicographically
/// least monic irreducible of degree n over GF(p), scanning coefficient
/// tuples (c_{n-1}, ..., c_0) in ascending numeric order. n = 1 collapses
/// to the prime field. Every call builds a fresh instance: two calls give
/// structurally equal but distinct parents.
FieldPtr make_finite_field(const Integer& p, int n);

/// Monic f of degree >= 1 over GF(p), ascending coefficients.
/// Degrees 2 and 3 are decided by exhaustive root search; the general case
/// checks gcd(f, x^(p^k) - x) = 1 for k = 1..deg/2.
bool is_irreducible_mod_p(const std::vector<Integer>& poly, const Integer& p);

bool is_prime(const Integer& n);

}  // namespace mathrepro::cas

#endif
