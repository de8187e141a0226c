#ifndef MATHREPRO_CAS_VALUE_HPP
#define MATHREPRO_CAS_VALUE_HPP

#include <string>
#include <variant>

#include "mathrepro/cas/field.hpp"
#include "mathrepro/cas/integer.hpp"
#include "mathrepro/cas/matrix.hpp"
#include "mathrepro/cas/polynomial.hpp"

namespace mathrepro::cas {

/// Any kernel object the serializer and interpreter can pass around.
/// Parents (fields, rings) travel as shared handles; identity of those
/// handles is what arithmetic checks.
using Value =
    std::variant<Integer, FieldElement, Polynomial, IntMatrix, FieldPtr,
                 RingPtr>;

/// Lowercase kind name used in messages ("integer", "polynomial", ...).
std::string value_kind(const Value& v);

/// Structural equality across all alternatives.
bool value_equal(const Value& a, const Value& b);

}  // namespace mathrepro::cas

#endif
