#ifndef MATHREPRO_MRDI_OBJECT_ID_HPP
#define MATHREPRO_MRDI_OBJECT_ID_HPP

#include <string>
#include <string_view>

namespace mathrepro::mrdi {

/// Content-derived object identifier: the first 128 bits of
/// SHA-256(canonical bytes), with the version nibble set to 8 and the
/// variant bits to 10 per the UUIDv8 layout, rendered lowercase-hyphenated
/// (8-4-4-4-12). Equal canonical bytes give equal identifiers, which is what
/// makes saves byte-reproducible.
std::string object_id_from_canonical(std::string_view canonical_bytes);

/// True when `s` is a lowercase hyphenated UUID (36 chars, hex digits,
/// hyphens at positions 8, 13, 18, 23).
bool is_uuid(std::string_view s);

}  // namespace mathrepro::mrdi

#endif
