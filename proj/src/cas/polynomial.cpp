#include "mathrepro/cas/polynomial.hpp"

#include <set>

#include "mathrepro/error.hpp"

namespace mathrepro::cas {

Polynomial::Polynomial(RingPtr parent, TermMap terms)
    : parent_(std::move(parent)), terms_(std::move(terms)) {
  if (!parent_) {
    throw Error(ErrorKind::InvalidInput, "polynomial without a parent ring");
  }
  const Field* field = parent_->coefficient_field().get();
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.size() != parent_->variable_count()) {
      throw Error(ErrorKind::InvalidInput,
                  "exponent vector length does not match variable count");
    }
    if (it->second.parent().get() != field) {
      throw Error(ErrorKind::ParentMismatch,
                  "parent mismatch: coefficient lives in a different field");
    }
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
}

long Polynomial::total_degree() const {
  long best = -1;
  for (const auto& [exps, coeff] : terms_) {
    long d = 0;
    for (auto e : exps) d += static_cast<long>(e);
    if (d > best) best = d;
  }
  return best;
}

const PolynomialRing& Polynomial::same_ring_or_throw(
    const Polynomial& rhs) const {
  if (parent_.get() != rhs.parent_.get()) {
    throw Error(ErrorKind::ParentMismatch,
                "parent mismatch: polynomials belong to different rings");
  }
  return *parent_;
}

Polynomial Polynomial::operator-() const {
  TermMap out;
  for (const auto& [exps, coeff] : terms_) out.emplace(exps, -coeff);
  return Polynomial(parent_, std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  same_ring_or_throw(rhs);
  TermMap out = terms_;
  for (const auto& [exps, coeff] : rhs.terms_) {
    auto it = out.find(exps);
    if (it == out.end()) {
      out.emplace(exps, coeff);
    } else {
      FieldElement sum = it->second + coeff;
      if (sum.is_zero()) {
        out.erase(it);
      } else {
        it->second = sum;
      }
    }
  }
  return Polynomial(parent_, std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
  same_ring_or_throw(rhs);
  return *this + (-rhs);
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  same_ring_or_throw(rhs);
  TermMap out;
  for (const auto& [ae, ac] : terms_) {
    for (const auto& [be, bc] : rhs.terms_) {
      ExponentVec exps(ae.size());
      for (std::size_t i = 0; i < exps.size(); ++i) exps[i] = ae[i] + be[i];
      FieldElement prod = ac * bc;
      auto it = out.find(exps);
      if (it == out.end()) {
        if (!prod.is_zero()) out.emplace(std::move(exps), prod);
      } else {
        FieldElement sum = it->second + prod;
        if (sum.is_zero()) {
          out.erase(it);
        } else {
          it->second = sum;
        }
      }
    }
  }
  return Polynomial(parent_, std::move(out));
}

Polynomial Polynomial::pow(const Integer& exponent) const {
  if (exponent.sign() < 0) {
    throw Error(ErrorKind::InvalidInput, "negative exponent");
  }
  Polynomial base = *this;
  Polynomial acc = parent_->one();
  Integer e = exponent;
  while (e.sign() > 0) {
    auto [q, r] = e.divmod(Integer(2));
    if (!r.is_zero()) acc = acc * base;
    base = base * base;
    e = q;
  }
  return acc;
}

FieldElement Polynomial::evaluate(
    const std::vector<FieldElement>& point) const {
  if (point.size() != parent_->variable_count()) {
    throw Error(ErrorKind::InvalidInput,
                "evaluation point arity does not match variable count");
  }
  const Field* field = parent_->coefficient_field().get();
  for (const auto& c : point) {
    if (c.parent().get() != field) {
      throw Error(ErrorKind::ParentMismatch,
                  "parent mismatch: evaluation point in a different field");
    }
  }
  FieldElement acc = parent_->coefficient_field()->zero();
  for (const auto& [exps, coeff] : terms_) {
    FieldElement term = coeff;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] != 0) term = term * point[i].pow(Integer(long(exps[i])));
    }
    acc = acc + term;
  }
  return acc;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
  if (!parent_->same_structure(*rhs.parent_)) return false;
  if (terms_.size() != rhs.terms_.size()) return false;
  auto it = terms_.begin();
  auto jt = rhs.terms_.begin();
  for (; it != terms_.end(); ++it, ++jt) {
    if (it->first != jt->first || !(it->second == jt->second)) return false;
  }
  return true;
}

Polynomial PolynomialRing::zero() const {
  return Polynomial(shared_from_this(), {});
}

Polynomial PolynomialRing::one() const { return from_integer(Integer(1)); }

Polynomial PolynomialRing::constant(const FieldElement& c) const {
  if (c.parent().get() != field_.get()) {
    throw Error(ErrorKind::ParentMismatch,
                "parent mismatch: constant lives in a different field");
  }
  Polynomial::TermMap terms;
  if (!c.is_zero()) terms.emplace(ExponentVec(names_.size(), 0), c);
  return Polynomial(shared_from_this(), std::move(terms));
}

Polynomial PolynomialRing::from_integer(const Integer& n) const {
  return constant(field_->from_integer(n));
}

Polynomial PolynomialRing::generator(std::size_t index) const {
  if (index >= names_.size()) {
    throw Error(ErrorKind::InvalidInput, "generator index out of range");
  }
  ExponentVec exps(names_.size(), 0);
  exps[index] = 1;
  Polynomial::TermMap terms;
  terms.emplace(std::move(exps), field_->one());
  return Polynomial(shared_from_this(), std::move(terms));
}

bool PolynomialRing::same_structure(const PolynomialRing& other) const {
  return names_ == other.names_ &&
         field_->same_structure(*other.field_);
}

bool is_valid_identifier(const std::string& name) {
  if (name.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
  };
  auto alnum = [&](char c) { return alpha(c) || (c >= '0' && c <= '9') || c == '_'; };
  if (!alpha(name[0])) return false;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (!alnum(name[i])) return false;
  }
  return true;
}

std::pair<RingPtr, std::vector<Polynomial>> make_polynomial_ring(
    FieldPtr field, std::vector<std::string> names) {
  if (!field) {
    throw Error(ErrorKind::InvalidInput, "polynomial ring without a field");
  }
  std::set<std::string> seen;
  for (const auto& name : names) {
    if (!is_valid_identifier(name)) {
      throw Error(ErrorKind::InvalidIdentifier,
                  "invalid variable name '" + name + "'");
    }
    if (!seen.insert(name).second) {
      throw Error(ErrorKind::DuplicateVariable,
                  "duplicate variable name '" + name + "'");
    }
  }
  RingPtr ring(new PolynomialRing(std::move(field), std::move(names)));
  std::vector<Polynomial> gens;
  gens.reserve(ring->variable_count());
  for (std::size_t i = 0; i < ring->variable_count(); ++i) {
    gens.push_back(ring->generator(i));
  }
  return {ring, std::move(gens)};
}

}  // namespace mathrepro::cas
