#include "mathrepro/cas/field.hpp"

#include <algorithm>
#include <utility>

#include "mathrepro/error.hpp"

namespace mathrepro::cas {

namespace {

// -- dense polynomial helpers over GF(p), ascending coefficient vectors --

using Poly = std::vector<Integer>;

void trim(Poly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly sub_mod(const Poly& a, const Poly& b, const Integer& p) {
  Poly r(std::max(a.size(), b.size()), Integer(0));
  for (std::size_t i = 0; i < r.size(); ++i) {
    Integer s = (i < a.size() ? a[i] : Integer(0)) -
                (i < b.size() ? b[i] : Integer(0));
    r[i] = s.mod_reduce(p);
  }
  trim(r);
  return r;
}

Poly mul_mod(const Poly& a, const Poly& b, const Integer& p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] += a[i] * b[j];
    }
  }
  for (auto& c : r) c = c.mod_reduce(p);
  trim(r);
  return r;
}

// Remainder of a by monic-or-not divisor over GF(p).
Poly rem_mod(Poly a, const Poly& div, const Integer& p) {
  trim(a);
  Poly d = div;
  trim(d);
  if (d.empty()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  Integer lead_inv = d.back().invert_mod(p);
  while (deg(a) >= deg(d)) {
    Integer factor = (a.back() * lead_inv).mod_reduce(p);
    int shift = deg(a) - deg(d);
    for (std::size_t i = 0; i < d.size(); ++i) {
      a[i + shift] = (a[i + shift] - factor * d[i]).mod_reduce(p);
    }
    trim(a);
  }
  return a;
}

Poly gcd_mod(Poly a, Poly b, const Integer& p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != Integer(1)) {
    Integer inv = a.back().invert_mod(p);
    for (auto& c : a) c = (c * inv).mod_reduce(p);
  }
  return a;
}

Poly powmod(Poly base, Integer e, const Poly& mod, const Integer& p) {
  Poly result{Integer(1)};
  base = rem_mod(std::move(base), mod, p);
  while (e.sign() > 0) {
    auto [q, r] = e.divmod(Integer(2));
    if (!r.is_zero()) result = rem_mod(mul_mod(result, base, p), mod, p);
    base = rem_mod(mul_mod(base, base, p), mod, p);
    e = q;
  }
  return result;
}

Integer eval_mod(const Poly& f, const Integer& x, const Integer& p) {
  Integer acc(0);
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    acc = (acc * x + *it).mod_reduce(p);
  }
  return acc;
}

// Extended Euclid over GF(p)[x]: returns s with s*a = gcd (mod m), where
// gcd must be a nonzero constant for the inverse to exist.
Poly invert_mod_poly(const Poly& a, const Poly& m, const Integer& p) {
  Poly r0 = m, r1 = a;
  Poly s0{}, s1{Integer(1)};
  trim(r1);
  while (!r1.empty() && deg(r1) > 0) {
    // One division step: r0 = q*r1 + r2.
    Poly q;
    {
      Poly rem = r0;
      Integer lead_inv = r1.back().invert_mod(p);
      q.assign(static_cast<std::size_t>(std::max(0, deg(r0) - deg(r1) + 1)),
               Integer(0));
      while (deg(rem) >= deg(r1)) {
        Integer factor = (rem.back() * lead_inv).mod_reduce(p);
        int shift = deg(rem) - deg(r1);
        q[static_cast<std::size_t>(shift)] = factor;
        for (std::size_t i = 0; i < r1.size(); ++i) {
          rem[i + shift] = (rem[i + shift] - factor * r1[i]).mod_reduce(p);
        }
        trim(rem);
      }
      trim(q);
      r0 = std::move(r1);
      r1 = std::move(rem);
    }
    Poly s2 = sub_mod(s0, mul_mod(q, s1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) {
    throw Error(ErrorKind::DivisionByZero, "element is not invertible");
  }
  // r1 is a nonzero constant c: inverse is s1 / c.
  Integer c_inv = r1[0].invert_mod(p);
  Poly inv = s1;
  for (auto& c : inv) c = (c * c_inv).mod_reduce(p);
  trim(inv);
  return inv;
}

std::vector<Integer> reduced(std::vector<Integer> coeffs, const Integer& p) {
  for (auto& c : coeffs) c = c.mod_reduce(p);
  return coeffs;
}

}  // namespace

bool is_prime(const Integer& n) {
  if (n < Integer(2)) return false;
  if (n == Integer(2)) return true;
  if ((n % Integer(2)).is_zero()) return false;
  for (Integer d(3); d * d <= n; d += Integer(2)) {
    if ((n % d).is_zero()) return false;
  }
  return true;
}

bool is_irreducible_mod_p(const std::vector<Integer>& poly, const Integer& p) {
  Poly f = reduced(poly, p);
  trim(f);
  int n = deg(f);
  if (n < 1) return false;
  if (n == 1) return true;
  if (n == 2 || n == 3) {
    // Reducible iff it has a root.
    for (Integer x(0); x < p; x += Integer(1)) {
      if (eval_mod(f, x, p).is_zero()) return false;
    }
    return true;
  }
  // No irreducible factor of degree <= n/2: gcd(f, x^(p^k) - x) = 1.
  Poly xp{Integer(0), Integer(1)};
  for (int k = 1; k <= n / 2; ++k) {
    xp = powmod(xp, p, f, p);
    Poly diff = sub_mod(xp, Poly{Integer(0), Integer(1)}, p);
    Poly g = gcd_mod(f, diff, p);
    if (deg(g) != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(FieldPtr parent, std::vector<Integer> coeffs)
    : parent_(std::move(parent)), coeffs_(std::move(coeffs)) {
  if (!parent_) {
    throw Error(ErrorKind::InvalidInput, "field element without a parent");
  }
  if (coeffs_.size() != static_cast<std::size_t>(parent_->degree())) {
    throw Error(ErrorKind::InvalidInput,
                "coefficient vector length does not match field degree");
  }
}

bool FieldElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Integer& c) { return c.is_zero(); });
}

bool FieldElement::is_one() const {
  if (coeffs_.empty() || !(coeffs_[0] == Integer(1))) return false;
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(),
                     [](const Integer& c) { return c.is_zero(); });
}

const Field& FieldElement::same_parent_or_throw(
    const FieldElement& rhs) const {
  if (parent_.get() != rhs.parent_.get()) {
    throw Error(ErrorKind::ParentMismatch,
                "parent mismatch: elements belong to different fields");
  }
  return *parent_;
}

FieldElement FieldElement::operator-() const {
  const Integer& p = parent_->characteristic();
  std::vector<Integer> out(coeffs_.size(), Integer(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    out[i] = (-coeffs_[i]).mod_reduce(p);
  }
  return FieldElement(parent_, std::move(out));
}

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
  const Field& f = same_parent_or_throw(rhs);
  const Integer& p = f.characteristic();
  std::vector<Integer> out(coeffs_.size(), Integer(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    out[i] = (coeffs_[i] + rhs.coeffs_[i]).mod_reduce(p);
  }
  return FieldElement(parent_, std::move(out));
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const {
  const Field& f = same_parent_or_throw(rhs);
  const Integer& p = f.characteristic();
  std::vector<Integer> out(coeffs_.size(), Integer(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    out[i] = (coeffs_[i] - rhs.coeffs_[i]).mod_reduce(p);
  }
  return FieldElement(parent_, std::move(out));
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
  const Field& f = same_parent_or_throw(rhs);
  const Integer& p = f.characteristic();
  int n = f.degree();
  Poly prod = mul_mod(coeffs_, rhs.coeffs_, p);
  if (n > 1) prod = rem_mod(std::move(prod), f.defining_polynomial(), p);
  prod.resize(static_cast<std::size_t>(n), Integer(0));
  return FieldElement(parent_, std::move(prod));
}

FieldElement FieldElement::operator/(const FieldElement& rhs) const {
  same_parent_or_throw(rhs);
  return *this * rhs.inverse();
}

FieldElement FieldElement::pow(const Integer& exponent) const {
  if (exponent.sign() < 0) {
    throw Error(ErrorKind::InvalidInput, "negative exponent");
  }
  FieldElement base = *this;
  FieldElement acc = parent_->one();
  Integer e = exponent;
  while (e.sign() > 0) {
    auto [q, r] = e.divmod(Integer(2));
    if (!r.is_zero()) acc = acc * base;
    base = base * base;
    e = q;
  }
  return acc;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) {
    throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  }
  const Integer& p = parent_->characteristic();
  int n = parent_->degree();
  if (n == 1) {
    return FieldElement(parent_, {coeffs_[0].invert_mod(p)});
  }
  Poly inv = invert_mod_poly(coeffs_, parent_->defining_polynomial(), p);
  inv.resize(static_cast<std::size_t>(n), Integer(0));
  return FieldElement(parent_, std::move(inv));
}

bool FieldElement::operator==(const FieldElement& rhs) const {
  return parent_->same_structure(*rhs.parent_) && coeffs_ == rhs.coeffs_;
}

// ---------------------------------------------------------------------------
// Field

Integer Field::order() const {
  return characteristic().pow(static_cast<unsigned long>(degree()));
}

FieldElement Field::zero() const {
  return FieldElement(shared_from_this(),
                      std::vector<Integer>(degree(), Integer(0)));
}

FieldElement Field::one() const { return from_integer(Integer(1)); }

FieldElement Field::generator() const {
  if (degree() == 1) return one();
  std::vector<Integer> coeffs(degree(), Integer(0));
  coeffs[1] = Integer(1);
  return FieldElement(shared_from_this(), std::move(coeffs));
}

FieldElement Field::from_integer(const Integer& n) const {
  std::vector<Integer> coeffs(degree(), Integer(0));
  coeffs[0] = n.mod_reduce(characteristic());
  return FieldElement(shared_from_this(), std::move(coeffs));
}

FieldElement Field::element(std::vector<Integer> coeffs) const {
  if (coeffs.size() != static_cast<std::size_t>(degree())) {
    throw Error(ErrorKind::InvalidInput,
                "expected " + std::to_string(degree()) + " coefficients, got " +
                    std::to_string(coeffs.size()));
  }
  return FieldElement(shared_from_this(),
                      reduced(std::move(coeffs), characteristic()));
}

bool Field::same_structure(const Field& other) const {
  return characteristic() == other.characteristic() &&
         degree() == other.degree() &&
         defining_polynomial() == other.defining_polynomial();
}

const std::vector<Integer>& PrimeField::defining_polynomial() const {
  static const std::vector<Integer> kEmpty;
  return kEmpty;
}

FieldPtr make_prime_field(const Integer& p) {
  if (p < Integer(2)) {
    throw Error(ErrorKind::InvalidInput,
                "field characteristic must be at least 2, got " +
                    p.to_string());
  }
  if (!is_prime(p)) {
    throw Error(ErrorKind::NotPrime, p.to_string() + " is not prime");
  }
  return FieldPtr(new PrimeField(p));
}

FieldPtr make_finite_field(const Integer& p, int n) {
  if (n < 1) {
    throw Error(ErrorKind::InvalidInput,
                "field degree must be at least 1, got " + std::to_string(n));
  }
  if (p < Integer(2)) {
    throw Error(ErrorKind::InvalidInput,
                "field characteristic must be at least 2, got " +
                    p.to_string());
  }
  if (!is_prime(p)) {
    throw Error(ErrorKind::NotPrime, p.to_string() + " is not prime");
  }
  if (n == 1) return make_prime_field(p);

  // Scan x^n + c_{n-1} x^{n-1} + ... + c_0, tuples in ascending numeric
  // order, for the first irreducible candidate.
  std::vector<Integer> lower(static_cast<std::size_t>(n), Integer(0));
  for (;;) {
    std::vector<Integer> candidate = lower;
    candidate.push_back(Integer(1));
    if (is_irreducible_mod_p(candidate, p)) {
      return FieldPtr(new FiniteField(p, n, std::move(candidate)));
    }
    // Increment the tuple: c_0 is the least significant digit.
    std::size_t i = 0;
    for (; i < lower.size(); ++i) {
      lower[i] += Integer(1);
      if (lower[i] < p) break;
      lower[i] = Integer(0);
    }
    if (i == lower.size()) {
      throw Error(ErrorKind::InvalidInput,
                  "no irreducible polynomial found (unreachable)");
    }
  }
}

}  // namespace mathrepro::cas
