#ifndef MATHREPRO_CAS_POLYNOMIAL_HPP
#define MATHREPRO_CAS_POLYNOMIAL_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mathrepro/cas/field.hpp"

namespace mathrepro::cas {

class PolynomialRing;
using RingPtr = std::shared_ptr<const PolynomialRing>;

using ExponentVec = std::vector<std::uint32_t>;

/// Canonical term order: lexicographic on exponent vectors w.r.t. the
/// variable order, largest monomial first.
struct LexDescending {
  bool operator()(const ExponentVec& a, const ExponentVec& b) const {
    return a > b;
  }
};

/// Sparse multivariate polynomial. Terms map exponent vectors (length =
/// number of ring variables) to nonzero coefficients whose parent is the
/// ring's coefficient field instance. Same-parent discipline as
/// FieldElement: cross-ring arithmetic throws Error(ParentMismatch).
class Polynomial {
 public:
  using TermMap = std::map<ExponentVec, FieldElement, LexDescending>;

  Polynomial(RingPtr parent, TermMap terms);

  const RingPtr& ring() const { return parent_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Largest total degree over all terms; -1 for the zero polynomial.
  long total_degree() const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;

  /// Non-negative exponent; pow(0) is the constant 1.
  Polynomial pow(const Integer& exponent) const;

  /// Evaluates at a point given by one field element per variable. All
  /// point entries must live in the ring's coefficient field instance.
  FieldElement evaluate(const std::vector<FieldElement>& point) const;

  /// Structural equality (rings compared by structure, not identity).
  bool operator==(const Polynomial& rhs) const;

 private:
  const PolynomialRing& same_ring_or_throw(const Polynomial& rhs) const;

  RingPtr parent_;
  TermMap terms_;
};

class PolynomialRing : public std::enable_shared_from_this<PolynomialRing> {
 public:
  const FieldPtr& coefficient_field() const { return field_; }
  const std::vector<std::string>& variable_names() const { return names_; }
  std::size_t variable_count() const { return names_.size(); }

  Polynomial zero() const;
  Polynomial one() const;
  Polynomial constant(const FieldElement& c) const;
  Polynomial from_integer(const Integer& n) const;
  Polynomial generator(std::size_t index) const;

  bool same_structure(const PolynomialRing& other) const;

 private:
  friend std::pair<RingPtr, std::vector<Polynomial>> make_polynomial_ring(
      FieldPtr field, std::vector<std::string> names);
  PolynomialRing(FieldPtr field, std::vector<std::string> names)
      : field_(std::move(field)), names_(std::move(names)) {}

  FieldPtr field_;
  std::vector<std::string> names_;
};

/// Matches [A-Za-z][A-Za-z0-9_]*.
bool is_valid_identifier(const std::string& name);

/// Returns the ring together with its generators, in variable order.
/// Throws Error(DuplicateVariable) / Error(InvalidIdentifier).
std::pair<RingPtr, std::vector<Polynomial>> make_polynomial_ring(
    FieldPtr field, std::vector<std::string> names);

}  // namespace mathrepro::cas

#endif
