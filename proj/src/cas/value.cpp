#include "mathrepro/cas/value.hpp"

namespace mathrepro::cas {

std::string value_kind(const Value& v) {
  switch (v.index()) {
    case 0: return "integer";
    case 1: return "field element";
    case 2: return "polynomial";
    case 3: return "matrix";
    case 4: return "field";
    case 5: return "polynomial ring";
  }
  return "value";
}

bool value_equal(const Value& a, const Value& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<T>(b);
        if constexpr (std::is_same_v<T, FieldPtr>) {
          return lhs->same_structure(*rhs);
        } else if constexpr (std::is_same_v<T, RingPtr>) {
          return lhs->same_structure(*rhs);
        } else {
          return lhs == rhs;
        }
      },
      a);
}

}  // namespace mathrepro::cas
