#ifndef MATHREPRO_CAS_PRINTER_HPP
#define MATHREPRO_CAS_PRINTER_HPP

#include <string>
#include <vector>

#include "mathrepro/cas/value.hpp"

namespace mathrepro::cas {

/// Deterministic textual forms. Doctest comparison and the CLI both print
/// through these, so the formats are part of the toolkit's contract:
///
///   integer            42
///   prime field        GF(7)
///   extension field    GF(7^2)
///   field element      2*o^2 + o + 6        (polynomial in the generator o)
///   polynomial ring    polynomial ring in x, y over GF(7^2)
///   polynomial         x^2 + (o + 1)*x*y + 3
///   matrix             one bracketed row per line, columns right-aligned
std::string print_integer(const Integer& n);
std::string print_field(const Field& f);
std::string print_field_element(const FieldElement& e);
std::string print_ring(const PolynomialRing& r);
std::string print_polynomial(const Polynomial& p);
std::vector<std::string> print_matrix(const IntMatrix& m);

/// Every value as its printed lines (matrices span several).
std::vector<std::string> print_value(const Value& v);

}  // namespace mathrepro::cas

#endif
